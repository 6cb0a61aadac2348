//! Brute-force enumerators used as ground truth.
//!
//! Nothing here calls the closed forms being tested. Orbits are only asked
//! for their iterated `μ1` and `μ_CZ`; sums, Euler characteristics and
//! minimizations are recomputed locally.

use serde::{Deserialize, Serialize};

use crate::ech::Partition;
use crate::error::Result;
use crate::exact::Rational;
use crate::fredholm::{CurveConfig, End, TrivialCylinderCover};
use crate::multicover::{Building, CoverAssignment, CoverEnd, EndCovers};
use crate::orbits::OrbitSpec;

/// Limits on every enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumBounds {
    pub max_total_multiplicity: u32,
    pub max_genus: u32,
    /// Cap on the number of ends on each side of a trivial-cylinder cover.
    pub max_parts: u32,
    pub theta_denominator_bound: u32,
    pub max_degree: u32,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds {
            max_total_multiplicity: 10,
            max_genus: 2,
            max_parts: 10,
            theta_denominator_bound: 12,
            max_degree: 5,
        }
    }
}

/// Partitions of `n` in descending lexicographic order, produced lazily by
/// the successor rule on the descending part sequence.
pub struct PartitionStream {
    current: Option<Vec<u32>>,
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let item = Partition::new(cur.clone()).expect("parts are positive");
        // Successor: drop trailing ones, lower the last larger part by one,
        // and refill greedily with parts no larger than it.
        let ones = cur.iter().rev().take_while(|&&p| p == 1).count();
        if ones < cur.len() {
            let mut next = cur[..cur.len() - ones].to_vec();
            let last = next.pop().expect("a part larger than one");
            let cap = last - 1;
            next.push(cap);
            let mut rest = ones as u32 + 1;
            while rest > 0 {
                let part = rest.min(cap);
                next.push(part);
                rest -= part;
            }
            self.current = Some(next);
        }
        Some(item)
    }
}

pub fn enumerate_partitions(n: u32) -> PartitionStream {
    PartitionStream {
        current: (n > 0).then(|| vec![n]),
    }
}

/// Number of partitions of `n`, by the recurrence on the largest allowed
/// part.
pub fn count_partitions(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    if n == 0 {
        0
    } else {
        table[n]
    }
}

/// Multisets of positive integers (as descending vectors) summing to `n`,
/// the empty one included for `n = 0`, with at most `max_len` entries.
fn multisets(n: u32, max_len: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    enumerate_partitions(n)
        .filter(|p| p.len() as u32 <= max_len)
        .map(|p| p.parts().to_vec())
        .collect()
}

/// One side of a trivial-cylinder cover: symmetric multiplicities and pair
/// multiplicities with `Σsym + 2Σpair = total`.
fn sides(total: u32, max_parts: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for pair_total in 0..=total / 2 {
        let sym_total = total - 2 * pair_total;
        if sym_total == 0 {
            continue;
        }
        for sym in multisets(sym_total, max_parts) {
            for pairs in multisets(pair_total, max_parts) {
                if sym.len() + pairs.len() <= max_parts as usize {
                    out.push((sym.clone(), pairs));
                }
            }
        }
    }
    out
}

fn odd_count(v: &[u32]) -> usize {
    v.iter().filter(|&&m| m % 2 == 1).count()
}

/// Every balanced, parity-legal cover of the trivial cylinder over `spec`
/// with total multiplicity and genus within bounds.
pub fn enumerate_trivial_covers(
    spec: OrbitSpec,
    bounds: EnumBounds,
) -> impl Iterator<Item = TrivialCylinderCover> {
    (1..=bounds.max_total_multiplicity).flat_map(move |total| {
        let all = sides(total, bounds.max_parts);
        let mut out = Vec::new();
        for (a, c) in &all {
            for (b, d) in &all {
                if odd_count(a) % 2 != odd_count(b) % 2 {
                    continue;
                }
                for genus in 0..=bounds.max_genus {
                    out.push(TrivialCylinderCover {
                        orbit: spec,
                        genus,
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                        d: d.clone(),
                    });
                }
            }
        }
        out
    })
}

/// Direct Real index of a config: `−½χ + c1 + Σμ1 − Σμ1 + Σμ_CZ − Σμ_CZ`,
/// computed as a rational.
pub fn direct_index(cfg: &CurveConfig) -> Result<Rational> {
    let punctures = cfg.sym_pos.len() + cfg.sym_neg.len() + 2 * (cfg.pair_pos.len() + cfg.pair_neg.len());
    let chi = 2 - 2 * i64::from(cfg.genus) - punctures as i64;
    let mut total = Rational::new(-chi, 2) + Rational::from_integer(cfg.c1);
    for e in &cfg.sym_pos {
        total += e.orbit.mu1(e.mult)?.to_rational();
    }
    for e in &cfg.sym_neg {
        total -= e.orbit.mu1(e.mult)?.to_rational();
    }
    for e in &cfg.pair_pos {
        total += Rational::from_integer(e.orbit.mu_cz(e.mult)?);
    }
    for e in &cfg.pair_neg {
        total -= Rational::from_integer(e.orbit.mu_cz(e.mult)?);
    }
    Ok(total)
}

/// Minimum of the partition inequality's left side over all partitions of
/// `n`, with every partition attaining it.
pub fn min_rech(spec: &OrbitSpec, n: u32) -> Result<(Rational, Vec<Partition>)> {
    let half = Rational::new(1, 2);
    let mut mu = Vec::with_capacity(n as usize);
    for q in 1..=n {
        mu.push(spec.mu1(q)?.to_rational());
    }
    let mut best: Option<Rational> = None;
    let mut argmin = Vec::new();
    for p in enumerate_partitions(n) {
        let qs: Vec<Rational> = p.parts().iter().map(|&q| Rational::from_integer(i64::from(q))).collect();
        let rhos: Vec<Rational> = p.parts().iter().map(|&q| mu[q as usize - 1] + half).collect();
        let mut left = Rational::from_integer(0);
        for (i, &q) in p.parts().iter().enumerate() {
            left += mu[q as usize - 1] - half * rhos[i];
            for j in 0..qs.len() {
                let (x, y) = (qs[i] * rhos[j], qs[j] * rhos[i]);
                left += half * if x < y { x } else { y };
            }
        }
        match best {
            Some(b) if left > b => {}
            Some(b) if left == b => argmin.push(p),
            _ => {
                best = Some(left);
                argmin = vec![p];
            }
        }
    }
    Ok((best.unwrap_or_default(), argmin))
}

/// Ways to cover a symmetric end `D` times by symmetric ends and pairs.
fn symmetric_cover_options(degree: u32) -> Vec<Vec<CoverEnd>> {
    let mut out = Vec::new();
    for pair_total in 0..=degree / 2 {
        for pairs in multisets(pair_total, u32::MAX) {
            for sym in multisets(degree - 2 * pair_total, u32::MAX) {
                let mut ends: Vec<CoverEnd> = sym.iter().map(|&p| CoverEnd::sym(p)).collect();
                ends.extend(pairs.iter().map(|&q| CoverEnd::pair(q)));
                out.push(ends);
            }
        }
    }
    out
}

fn pair_cover_options(degree: u32) -> Vec<Vec<CoverEnd>> {
    multisets(degree, u32::MAX)
        .into_iter()
        .map(|qs| qs.into_iter().map(CoverEnd::pair).collect())
        .collect()
}

fn product(options: &[Vec<Vec<CoverEnd>>]) -> Vec<Vec<Vec<CoverEnd>>> {
    let mut acc: Vec<Vec<Vec<CoverEnd>>> = vec![vec![]];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in opts {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Every genus-zero cover of `base` of degree `degree` whose branch number,
/// forced by Riemann–Hurwitz, is non-negative.
pub fn enumerate_cover_assignments(
    base: &CurveConfig,
    degree: u32,
) -> impl Iterator<Item = CoverAssignment> {
    let sym_opts = symmetric_cover_options(degree);
    let pair_opts = pair_cover_options(degree);
    let counts = [base.sym_pos.len(), base.sym_neg.len(), base.pair_pos.len(), base.pair_neg.len()];
    let mut per_end = Vec::new();
    for (i, &n) in counts.iter().enumerate() {
        for _ in 0..n {
            per_end.push(if i < 2 { sym_opts.clone() } else { pair_opts.clone() });
        }
    }
    let base_chi = 2 - 2 * i64::from(base.genus)
        - (counts[0] + counts[1]) as i64
        - 2 * (counts[2] + counts[3]) as i64;
    let base = base.clone();
    product(&per_end).into_iter().filter_map(move |choice| {
        let mut it = choice.into_iter();
        let mut take = |n: usize| -> Vec<Vec<CoverEnd>> { it.by_ref().take(n).collect() };
        let covers = EndCovers {
            sym_pos: take(counts[0]),
            sym_neg: take(counts[1]),
            pair_pos: take(counts[2]),
            pair_neg: take(counts[3]),
        };
        let ends_u: i64 = covers
            .sym_pos
            .iter()
            .chain(&covers.sym_neg)
            .chain(&covers.pair_pos)
            .chain(&covers.pair_neg)
            .flatten()
            .map(|c| match c.kind {
                crate::multicover::CoverKind::Sym => 1,
                crate::multicover::CoverKind::Pair => 2,
            })
            .sum();
        let branch = i64::from(degree) * base_chi - (2 - ends_u);
        (branch >= 0).then(|| CoverAssignment {
            base: base.clone(),
            degree,
            branch: branch as u32,
            covers,
        })
    })
}

/// Limits for building enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingBounds {
    pub max_levels: usize,
    pub max_punctures: usize,
    /// Largest multiplicity of a negative end of a non-cover component.
    pub max_mult: u32,
}

impl Default for BuildingBounds {
    fn default() -> Self {
        BuildingBounds {
            max_levels: 3,
            max_punctures: 6,
            max_mult: 2,
        }
    }
}

/// A candidate component with one positive end.
struct Candidate {
    config: CurveConfig,
    trivial: bool,
}

fn component_candidates(top: End, pool: &[OrbitSpec], budget: usize, max_mult: u32) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    let push_if = |out: &mut Vec<Candidate>, negs: Vec<End>, min_index: i64| -> Result<()> {
        let cfg = CurveConfig::symmetric(vec![top], negs);
        if direct_index(&cfg)? >= Rational::from_integer(min_index) {
            out.push(Candidate { config: cfg, trivial: false });
        }
        Ok(())
    };
    if budget >= 1 {
        push_if(&mut out, vec![], 1)?;
    }
    if budget >= 2 {
        out.push(Candidate {
            config: CurveConfig::symmetric(vec![top], vec![top]),
            trivial: true,
        });
    }
    // Branched covers of the trivial cylinder over the same orbit.
    for p in enumerate_partitions(top.mult) {
        let parts = p.parts();
        if parts.len() < 2 || parts.len() + 1 > budget || odd_count(parts) % 2 != (top.mult % 2) as usize {
            continue;
        }
        let negs = parts.iter().map(|&m| End::new(top.orbit, m)).collect();
        push_if(&mut out, negs, 0)?;
    }
    // Everything else: negative ends from the pool, index at least one.
    let types: Vec<End> = pool
        .iter()
        .flat_map(|&o| (1..=max_mult).map(move |m| End::new(o, m)))
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        types: &[End],
        chosen: &mut Vec<usize>,
        left: usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if !chosen.is_empty() {
            visit(chosen)?;
        }
        if left == 0 {
            return Ok(());
        }
        for i in start..types.len() {
            chosen.push(i);
            rec(i, types, chosen, left - 1, visit)?;
            chosen.pop();
        }
        Ok(())
    }
    let mut visit = |idx: &[usize]| -> Result<()> {
        let negs: Vec<End> = idx.iter().map(|&i| types[i]).collect();
        let same_orbit = negs.iter().all(|e| e.orbit == top.orbit);
        let balanced = negs.iter().map(|e| e.mult).sum::<u32>() == top.mult;
        if same_orbit && balanced {
            return Ok(());
        }
        push_if(&mut out, negs, 1)
    };
    rec(0, &types, &mut chosen, budget.saturating_sub(1), &mut visit)?;
    Ok(out)
}

/// Genus-zero buildings with one symmetric positive puncture at `top` and
/// no negative punctures, built from components with one positive end.
///
/// Components are trivial cylinders, branched covers of trivial cylinders
/// (kept when their index is non-negative), or curves whose negative ends
/// come from `pool` and whose index is at least one. No level consists of
/// trivial cylinders only.
pub fn enumerate_plane_buildings(top: End, pool: &[OrbitSpec], bounds: BuildingBounds) -> Result<Vec<Building>> {
    let mut out = Vec::new();
    let mut levels = Vec::new();
    extend(&mut levels, vec![top], 0, pool, bounds, &mut out)?;
    Ok(out)
}

fn extend(
    levels: &mut Vec<Vec<CurveConfig>>,
    open: Vec<End>,
    used: usize,
    pool: &[OrbitSpec],
    bounds: BuildingBounds,
    out: &mut Vec<Building>,
) -> Result<()> {
    if open.is_empty() {
        out.push(Building::new(levels.clone()));
        return Ok(());
    }
    if levels.len() == bounds.max_levels {
        return Ok(());
    }
    // Each open end needs at least one puncture in the next level.
    let budget = bounds.max_punctures.saturating_sub(used);
    if budget < open.len() {
        return Ok(());
    }
    let mut per_end = Vec::new();
    let others = open.len() - 1;
    for &e in &open {
        per_end.push(component_candidates(e, pool, budget - others, bounds.max_mult)?);
    }
    let mut pick: Vec<usize> = Vec::new();
    choose(levels, &open, &per_end, &mut pick, used, pool, bounds, out)
}

#[allow(clippy::too_many_arguments)]
fn choose(
    levels: &mut Vec<Vec<CurveConfig>>,
    open: &[End],
    per_end: &[Vec<Candidate>],
    pick: &mut Vec<usize>,
    used: usize,
    pool: &[OrbitSpec],
    bounds: BuildingBounds,
    out: &mut Vec<Building>,
) -> Result<()> {
    if pick.len() == open.len() {
        let comps: Vec<&Candidate> = pick.iter().zip(per_end).map(|(&i, c)| &c[i]).collect();
        if comps.iter().all(|c| c.trivial) {
            return Ok(());
        }
        let added: usize = comps.iter().map(|c| c.config.puncture_count()).sum();
        if used + added > bounds.max_punctures {
            return Ok(());
        }
        let next_open: Vec<End> = comps.iter().flat_map(|c| c.config.sym_neg.iter().copied()).collect();
        levels.push(comps.iter().map(|c| c.config.clone()).collect());
        extend(levels, next_open, used + added, pool, bounds, out)?;
        levels.pop();
        return Ok(());
    }
    let slot = pick.len();
    for i in 0..per_end[slot].len() {
        pick.push(i);
        choose(levels, open, per_end, pick, used, pool, bounds, out)?;
        pick.pop();
    }
    Ok(())
}
