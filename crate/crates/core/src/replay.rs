//! Exhaustive replays of the index theorems within finite bounds.
//!
//! Each suite walks an enumeration from [`crate::oracle`], evaluates the
//! closed forms, and records every disagreement as a [`Counterexample`].
//! Facts that must be witnessed at least once (sharpness of a bound, say)
//! are checked too; a missing witness is reported as a counterexample.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ech::{
    lattice_path_partition, negative_partition, positive_partition, rech_right, verify_rech, Partition,
};
use crate::error::{Error, Result};
use crate::exact::{gcd, HalfInt, Rational};
use crate::fredholm::{ind_real, trivial_cover_index, CurveConfig, End};
use crate::multicover::{
    bad_breaking_excluded, check_cover, lemma_a_bounds, mu1_bounds, mu_cz_relation, plane_building_check,
    LemmaKind,
};
use crate::orbits::{
    classify_half_period, classify_monodromy, monodromy_from_half_period, OrbitClass, OrbitSpec, Sp2Matrix,
};
use crate::oracle::{
    direct_index, enumerate_cover_assignments, enumerate_plane_buildings, enumerate_trivial_covers, min_rech,
    BuildingBounds, EnumBounds,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Iteration,
    EchLemma,
    Partition,
    Multicover,
    Buildings,
    BadBreaking,
    IterateBounds,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Iteration,
        Suite::EchLemma,
        Suite::Partition,
        Suite::Multicover,
        Suite::Buildings,
        Suite::BadBreaking,
        Suite::IterateBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Iteration => "iteration",
            Suite::EchLemma => "ech-lemma",
            Suite::Partition => "partition",
            Suite::Multicover => "multicover",
            Suite::Buildings => "buildings",
            Suite::BadBreaking => "bad-breaking",
            Suite::IterateBounds => "iterate-bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Every bound any suite reads. Each suite ignores the fields it has no
/// use for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    /// Largest total covering multiplicity of a trivial-cylinder cover.
    pub max_mult: u32,
    pub max_genus: u32,
    /// Largest denominator of an elliptic rotation number.
    pub theta_den: u32,
    /// Largest `n` for partition checks.
    pub max_n: u32,
    /// Largest covering degree.
    pub max_degree: u32,
    /// Largest number of ends of a base curve.
    pub max_base_ends: usize,
    /// Largest iterate.
    pub max_k: u32,
    /// Largest `d` in the breaking `β^{d+1} → β^d`.
    pub max_d: u32,
    pub max_levels: usize,
    pub max_punctures: usize,
}

impl SuiteBounds {
    /// The bounds the acceptance criteria are stated with.
    pub fn defaults(suite: Suite) -> Self {
        let theta_den = match suite {
            Suite::Partition => 25,
            Suite::Iteration | Suite::IterateBounds => 20,
            _ => 12,
        };
        SuiteBounds {
            max_mult: 10,
            max_genus: 2,
            theta_den,
            max_n: 12,
            max_degree: 5,
            max_base_ends: 3,
            max_k: 50,
            max_d: 20,
            max_levels: 3,
            max_punctures: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bounds: SuiteBounds,
    pub checked: u64,
    /// Instances outside the theorem's hypotheses (degenerate iterates).
    pub skipped: u64,
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    fn new(suite: Suite, bounds: SuiteBounds) -> Self {
        SuiteReport {
            suite,
            bounds,
            checked: 0,
            skipped: 0,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn fail(&mut self, case: impl fmt::Display, detail: impl Into<String>) {
        self.counterexamples.push(Counterexample {
            case: case.to_string(),
            detail: detail.into(),
        });
    }

    fn check(&mut self, ok: bool, case: impl fmt::Display, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(case, detail());
        }
    }

    fn witness(&mut self, found: bool, what: impl Into<String>) {
        let what = what.into();
        if found {
            self.witnesses.push(what);
        } else {
            self.fail("missing witness", what);
        }
    }
}

/// Runs one suite.
pub fn run(suite: Suite, bounds: SuiteBounds) -> SuiteReport {
    match suite {
        Suite::Iteration => iteration(bounds),
        Suite::EchLemma => ech_lemma(bounds),
        Suite::Partition => partition(bounds),
        Suite::Multicover => multicover(bounds),
        Suite::Buildings => buildings(bounds),
        Suite::BadBreaking => bad_breaking(bounds),
        Suite::IterateBounds => iterate_bounds(bounds),
    }
}

/// Hyperbolic seeds `μ1 ∈ {±1/2, ±3/2, 5/2}` for all four classes.
pub fn hyperbolic_specs() -> Vec<OrbitSpec> {
    let seeds = [-3, -1, 1, 3, 5];
    OrbitClass::HYPERBOLIC
        .iter()
        .flat_map(|&c| seeds.iter().map(move |&t| OrbitSpec::hyperbolic(c, HalfInt::from_twice(t)).unwrap()))
        .collect()
}

/// Rotation numbers `p/q + s` with `0 < p < q ≤ max_den`, `gcd(p, q) = 1`,
/// for each shift `s`.
pub fn elliptic_specs(max_den: u32, shifts: &[i64]) -> Vec<OrbitSpec> {
    let mut out = Vec::new();
    for &s in shifts {
        for q in 2..=i64::from(max_den) {
            for p in 1..q {
                if gcd(p, q) == 1 {
                    out.push(OrbitSpec::elliptic(Rational::new(p, q) + Rational::from_integer(s)).unwrap());
                }
            }
        }
    }
    out
}

fn iteration(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Iteration, bounds);
    let specs: Vec<_> = hyperbolic_specs().into_iter().chain(elliptic_specs(bounds.theta_den, &[0])).collect();
    for s in specs {
        for k in 1..=bounds.max_k {
            if !s.admits(k) {
                r.skipped += 1;
                continue;
            }
            let (m1, m2, cz) = (s.mu1(k).unwrap(), s.mu2(k).unwrap(), s.mu_cz(k).unwrap());
            let case = format!("{s} k={k}");
            r.check(m1 + m2 == HalfInt::from_int(cz), &case, || format!("mu1 {m1} + mu2 {m2} != cz {cz}"));
            r.check((m1 - m2).abs() <= HalfInt::ONE, &case, || format!("|mu1 - mu2| = |{m1} - {m2}| > 1"));
            if s.class().is_hyperbolic() {
                let first = s.mu_cz(1).unwrap();
                r.check(cz == i64::from(k) * first, &case, || format!("cz {cz} != k * {first}"));
            }
        }
    }
    r
}

fn entries_degenerate(spec: &OrbitSpec, lists: [&[u32]; 4]) -> bool {
    lists.iter().any(|v| v.iter().any(|&m| !spec.admits(m)))
}

fn ech_lemma(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::EchLemma, bounds);
    let enum_bounds = EnumBounds {
        max_total_multiplicity: bounds.max_mult,
        max_genus: bounds.max_genus,
        max_parts: bounds.max_mult,
        theta_denominator_bound: bounds.theta_den,
        max_degree: bounds.max_degree,
    };
    let specs: Vec<_> = hyperbolic_specs().into_iter().chain(elliptic_specs(bounds.theta_den, &[0, -1])).collect();
    let mut witnessed_zero = 0usize;
    for spec in &specs {
        let mut zero_at_cylinder = false;
        for cover in enumerate_trivial_covers(*spec, enum_bounds) {
            if entries_degenerate(spec, [&cover.a, &cover.b, &cover.c, &cover.d]) {
                r.skipped += 1;
                continue;
            }
            let case = || serde_json_like(&cover);
            let closed = match trivial_cover_index(&cover) {
                Ok(v) => v,
                Err(e) => {
                    r.fail(case(), format!("closed form failed: {e}"));
                    continue;
                }
            };
            let cfg = cover.to_config();
            let direct = direct_index(&cfg);
            let summed = ind_real(&cfg);
            r.check(
                direct == Ok(Rational::from_integer(closed)) && summed == Ok(closed),
                case(),
                || format!("closed form {closed}, direct {direct:?}, summed {summed:?}"),
            );
            r.check(closed >= 0, case(), || format!("negative index {closed}"));
            if cover.genus == 0 && cover.a.len() == 1 && cover.b.len() == 1 && closed == 0 {
                zero_at_cylinder = true;
            }
        }
        if zero_at_cylinder {
            witnessed_zero += 1;
        } else {
            r.fail(spec, "no k = l = 1 cover of index 0");
        }
    }
    r.witness(
        witnessed_zero == specs.len(),
        format!("index 0 attained with k = l = 1 for all {} orbits", specs.len()),
    );
    r
}

fn serde_json_like(cover: &crate::fredholm::TrivialCylinderCover) -> String {
    format!(
        "{} g={} a={:?} b={:?} c={:?} d={:?}",
        cover.orbit, cover.genus, cover.a, cover.b, cover.c, cover.d
    )
}

fn partition(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Partition, bounds);
    let specs: Vec<_> = hyperbolic_specs()
        .into_iter()
        .chain(elliptic_specs(bounds.theta_den, &[0, 1, -1]))
        .collect();
    for spec in &specs {
        for n in 1..=bounds.max_n {
            if (1..=n).any(|k| !spec.admits(k)) {
                r.skipped += 1;
                continue;
            }
            let case = format!("{spec} n={n}");
            let expected = match negative_partition(spec, n) {
                Ok(p) => p,
                Err(e) => {
                    r.fail(&case, e.to_string());
                    continue;
                }
            };
            let (min, argmin) = min_rech(spec, n).expect("nondegenerate");
            let right = rech_right(spec, n).expect("nondegenerate").to_rational();
            r.check(argmin == [expected.clone()], &case, || {
                format!("argmin {} but partition {expected}", show(&argmin))
            });
            r.check(min == right, &case, || format!("min {min} but right side {right}"));
            let report = verify_rech(spec, n).expect("nondegenerate");
            r.check(
                report.min.to_rational() == min && report.equality_partitions == argmin,
                &case,
                || format!("verify_rech {report:?} disagrees with oracle"),
            );
            if let Some(theta) = spec.theta() {
                let lattice = lattice_path_partition(theta, n).expect("n >= 1");
                r.check(lattice == expected, &case, || format!("lattice path {lattice} vs {expected}"));
            }
            let pos = positive_partition(spec, n);
            let rev = negative_partition(&spec.reverse(), n);
            r.check(pos == rev, &case, || "positive partition is not the reversed negative one".into());
        }
    }
    r
}

fn show(ps: &[Partition]) -> String {
    ps.iter().map(Partition::to_string).collect::<Vec<_>>().join(" ")
}

/// One orbit per class, nondegenerate up to the 20th iterate for the
/// elliptic one.
fn cover_pool() -> Vec<OrbitSpec> {
    let h = |c, t| OrbitSpec::hyperbolic(c, HalfInt::from_twice(t)).unwrap();
    vec![
        OrbitSpec::elliptic(Rational::new(7, 23)).unwrap(),
        h(OrbitClass::NegHypOne, 1),
        h(OrbitClass::NegHypTwo, 3),
        h(OrbitClass::PosHypOne, 1),
        h(OrbitClass::PosHypTwo, -1),
    ]
}

#[derive(Clone, Copy)]
enum Slot {
    SymPos,
    SymNeg,
    PairPos,
    PairNeg,
}

/// Genus-zero, `c1 = 0` base curves with between one and `max_ends` ends
/// (a pair counting as one end), at least one of them positive. Ends have
/// multiplicity one or two; bases with three ends use multiplicity one.
pub fn base_curves(pool: &[OrbitSpec], max_ends: usize) -> Vec<CurveConfig> {
    let slots = [Slot::SymPos, Slot::SymNeg, Slot::PairPos, Slot::PairNeg];
    let mut out = Vec::new();
    for ends in 1..=max_ends {
        let mults: &[u32] = if ends >= 3 { &[1] } else { &[1, 2] };
        let mut types = Vec::new();
        for &slot in &slots {
            for &o in pool {
                for &m in mults {
                    types.push((slot, End::new(o, m)));
                }
            }
        }
        let mut picked = Vec::with_capacity(ends);
        multisets(&types, ends, 0, &mut picked, &mut |chosen| {
            let mut cfg = CurveConfig::default();
            for &(slot, e) in chosen {
                match slot {
                    Slot::SymPos => cfg.sym_pos.push(e),
                    Slot::SymNeg => cfg.sym_neg.push(e),
                    Slot::PairPos => cfg.pair_pos.push(e),
                    Slot::PairNeg => cfg.pair_neg.push(e),
                }
            }
            if !(cfg.sym_pos.is_empty() && cfg.pair_pos.is_empty()) {
                out.push(cfg);
            }
        });
    }
    out
}

fn multisets<T: Copy>(items: &[T], size: usize, from: usize, picked: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    if picked.len() == size {
        f(picked);
        return;
    }
    for i in from..items.len() {
        picked.push(items[i]);
        multisets(items, size, i, picked, f);
        picked.pop();
    }
}

fn multicover(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Multicover, bounds);
    let bases = base_curves(&cover_pool(), bounds.max_base_ends);
    let mut sharp_at_identity = true;
    let mut lemma_instances = [0u64; 3];
    for base in &bases {
        for degree in 1..=bounds.max_degree {
            for assign in enumerate_cover_assignments(base, degree) {
                let check = match check_cover(&assign) {
                    Ok(c) => c,
                    Err(e) => {
                        r.fail(format!("{assign:?}"), format!("cover check failed: {e}"));
                        continue;
                    }
                };
                r.check(check.holds(), format!("{assign:?}"), || {
                    format!("ind(u) = {} < bound {}", check.cover_index, check.bound)
                });
                if degree == 1 && assign.branch == 0 && !check.is_equality() {
                    sharp_at_identity = false;
                }
                for (i, lemma) in [LemmaKind::Lem1, LemmaKind::Lem2, LemmaKind::Lem3].into_iter().enumerate() {
                    match lemma_a_bounds(&assign, lemma) {
                        Ok(l) => {
                            lemma_instances[i] += 1;
                            r.check(l.holds(), format!("{lemma:?} {assign:?}"), || format!("{l:?}"));
                        }
                        Err(Error::HypothesisViolation(_)) => {}
                        Err(e) => r.fail(format!("{lemma:?} {assign:?}"), e.to_string()),
                    }
                }
            }
        }
    }
    r.witness(sharp_at_identity, format!("equality at D = 1, B = 0 for all {} bases", bases.len()));
    for (i, name) in ["lem1", "lem2", "lem3"].iter().enumerate() {
        r.witness(
            lemma_instances[i] > 0,
            format!("{name} hypotheses met by {} covers", lemma_instances[i]),
        );
    }
    r
}

/// Dynamically convex orbits, one per class.
pub fn convex_pool() -> Vec<OrbitSpec> {
    let h = |c, t| OrbitSpec::hyperbolic(c, HalfInt::from_twice(t)).unwrap();
    vec![
        OrbitSpec::elliptic(Rational::new(15, 13)).unwrap(),
        h(OrbitClass::NegHypOne, 3),
        h(OrbitClass::NegHypTwo, 3),
        h(OrbitClass::PosHypOne, 5),
        h(OrbitClass::PosHypTwo, 3),
    ]
}

fn buildings(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Buildings, bounds);
    let pool = convex_pool();
    let bb = BuildingBounds {
        max_levels: bounds.max_levels,
        max_punctures: bounds.max_punctures,
        max_mult: 2,
    };
    let (mut plane_equality, mut multi_level) = (false, false);
    for &top in &pool {
        for mult in 1..=2 {
            let all = match enumerate_plane_buildings(End::new(top, mult), &pool, bb) {
                Ok(all) => all,
                Err(e) => {
                    r.fail(format!("{top} x{mult}"), e.to_string());
                    continue;
                }
            };
            for b in all {
                match plane_building_check(&b) {
                    Ok(rep) => {
                        r.check(rep.holds(), format!("{b:?}"), || format!("{rep:?}"));
                        plane_equality |= rep.is_equality() && rep.single_plane;
                        multi_level |= rep.levels == bounds.max_levels;
                    }
                    Err(e) => r.fail(format!("{b:?}"), e.to_string()),
                }
            }
        }
    }
    r.witness(plane_equality, "index 1 attained by a single plane");
    r.witness(multi_level, format!("buildings with {} levels enumerated", bounds.max_levels));
    r
}

fn bad_breaking(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::BadBreaking, bounds);
    let mut specs: Vec<OrbitSpec> = Vec::new();
    for class in OrbitClass::HYPERBOLIC {
        for t in (3..=21).step_by(2) {
            specs.push(OrbitSpec::hyperbolic(class, HalfInt::from_twice(t)).unwrap());
        }
    }
    specs.extend(elliptic_specs(bounds.theta_den, &(1..=10).collect::<Vec<_>>()));
    for spec in &specs {
        for d in 1..=bounds.max_d {
            let case = format!("{spec} d={d}");
            match bad_breaking_excluded(d, spec) {
                Ok(t) => r.check(t.contradiction(), &case, || format!("{t:?}")),
                Err(e) => r.fail(&case, e.to_string()),
            }
        }
    }
    r
}

fn iterate_bounds(bounds: SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::IterateBounds, bounds);
    let specs: Vec<_> = hyperbolic_specs()
        .into_iter()
        .chain(elliptic_specs(bounds.theta_den, &[0, 1, -1]))
        .collect();
    let (mut upper_sat, mut lower_sat) = (true, true);
    for s in &specs {
        for k in 1..=bounds.max_k {
            if !s.admits(k) {
                r.skipped += 1;
                continue;
            }
            let case = format!("{s} k={k}");
            let b = mu1_bounds(s, k).unwrap();
            r.check(b.holds(), &case, || format!("{b:?}"));
            let rel = mu_cz_relation(s, k).unwrap();
            r.check(rel.holds(), &case, || format!("{rel:?}"));
            match s.class() {
                OrbitClass::PosHypTwo => upper_sat &= b.value == b.upper,
                OrbitClass::PosHypOne => lower_sat &= b.value == b.lower,
                _ => {}
            }
        }
    }
    r.witness(upper_sat, "pos-hyp-2 attains the upper bound at every k");
    r.witness(lower_sat, "pos-hyp-1 attains the lower bound at every k");
    r
}

/// The classification properties of a half-period matrix: both routes
/// agree, `H` and `−H` agree, and inverting the monodromy swaps types.
/// Returns a description of the first failure.
pub fn classification_check(h: &Sp2Matrix) -> std::result::Result<OrbitClass, String> {
    let direct = classify_half_period(h).map_err(|e| format!("{h}: {e}"))?;
    let m = monodromy_from_half_period(h);
    let (via_m, _) = classify_monodromy(&m).map_err(|e| format!("{h}: monodromy {e}"))?;
    if via_m != direct {
        return Err(format!("{h}: half-period {direct} vs monodromy {via_m}"));
    }
    let neg = classify_half_period(&h.neg()).map_err(|e| format!("-{h}: {e}"))?;
    if neg != direct {
        return Err(format!("{h}: -H classifies as {neg}, H as {direct}"));
    }
    let (inv, _) = classify_monodromy(&m.inverse()).map_err(|e| format!("{h}: inverse {e}"))?;
    if inv != direct.reversed() {
        return Err(format!("{h}: inverse classifies as {inv}, expected {}", direct.reversed()));
    }
    Ok(direct)
}
