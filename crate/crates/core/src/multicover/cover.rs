//! Branched covers of somewhere injective Real curves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fredholm::{euler_characteristic, ind_real, CurveConfig, End};
use crate::orbits::{OrbitClass, OrbitSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    /// A symmetric end of the cover.
    Sym,
    /// A pair of nonsymmetric ends of the cover.
    Pair,
}

/// One end (or pair of ends) of the covering curve lying over a base end,
/// with its multiplicity relative to that base end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverEnd {
    pub kind: CoverKind,
    pub mult: u32,
}

impl CoverEnd {
    pub fn sym(mult: u32) -> Self {
        CoverEnd { kind: CoverKind::Sym, mult }
    }

    pub fn pair(mult: u32) -> Self {
        CoverEnd { kind: CoverKind::Pair, mult }
    }

    /// Contribution to the covering degree: a pair counts twice.
    fn weight(&self) -> u32 {
        match self.kind {
            CoverKind::Sym => self.mult,
            CoverKind::Pair => 2 * self.mult,
        }
    }
}

/// For each end of the base curve, the ends of the cover lying over it.
/// The outer lists run parallel to the end lists of the base config.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndCovers {
    #[serde(default)]
    pub sym_pos: Vec<Vec<CoverEnd>>,
    #[serde(default)]
    pub sym_neg: Vec<Vec<CoverEnd>>,
    #[serde(default)]
    pub pair_pos: Vec<Vec<CoverEnd>>,
    #[serde(default)]
    pub pair_neg: Vec<Vec<CoverEnd>>,
}

/// A genus-zero Real curve `u` presented as a degree-`D` cover of a
/// somewhere injective curve `ū` with total branch number `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverAssignment {
    pub base: CurveConfig,
    pub degree: u32,
    pub branch: u32,
    pub covers: EndCovers,
}

impl CoverAssignment {
    /// The branch number forced by Riemann–Hurwitz for a genus-zero cover,
    /// `B = D·χ(ū) − χ(u)`, which may be negative.
    pub fn forced_branch(&self) -> i64 {
        let chi_u = euler_characteristic(&self.assemble());
        i64::from(self.degree) * euler_characteristic(&self.base) - chi_u
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidMultiplicity);
        }
        let d = self.degree;
        let base = &self.base;
        let covers = &self.covers;
        let lists = [
            ("sym_pos", base.sym_pos.len(), &covers.sym_pos, true),
            ("sym_neg", base.sym_neg.len(), &covers.sym_neg, true),
            ("pair_pos", base.pair_pos.len(), &covers.pair_pos, false),
            ("pair_neg", base.pair_neg.len(), &covers.pair_neg, false),
        ];
        for (name, expected, cover_lists, symmetric) in lists {
            if cover_lists.len() != expected {
                return Err(Error::MultiplicityMismatch(format!(
                    "{name}: {} cover lists for {expected} base ends",
                    cover_lists.len()
                )));
            }
            for (i, ends) in cover_lists.iter().enumerate() {
                if ends.is_empty() || ends.iter().any(|e| e.mult == 0) {
                    return Err(Error::MultiplicityMismatch(format!(
                        "{name}[{i}]: covering ends must be present with positive multiplicity"
                    )));
                }
                if !symmetric && ends.iter().any(|e| e.kind == CoverKind::Sym) {
                    return Err(Error::MultiplicityMismatch(format!(
                        "{name}[{i}]: a pair of ends can only be covered by pairs"
                    )));
                }
                let total: u32 = if symmetric {
                    ends.iter().map(CoverEnd::weight).sum()
                } else {
                    ends.iter().map(|e| e.mult).sum()
                };
                if total != d {
                    return Err(Error::MultiplicityMismatch(format!(
                        "{name}[{i}]: covering multiplicities sum to {total}, degree is {d}"
                    )));
                }
            }
        }
        if base.genus != 0 {
            return Err(Error::RiemannHurwitzViolation(
                "a genus-zero cover needs a genus-zero base".into(),
            ));
        }
        let forced = self.forced_branch();
        if forced < 0 || forced != i64::from(self.branch) {
            return Err(Error::RiemannHurwitzViolation(format!(
                "chi(u) = D chi(base) - B forces B = {forced}, got {}",
                self.branch
            )));
        }
        Ok(())
    }

    /// The covering curve `u` itself: genus zero, `c1(u) = D·c1(ū)`, and
    /// each covering end asymptotic to the corresponding iterate.
    pub fn assemble(&self) -> CurveConfig {
        let mut u = CurveConfig {
            genus: 0,
            c1: i64::from(self.degree) * self.base.c1,
            ..Default::default()
        };
        let lift = |base: &End, c: &CoverEnd| End::new(base.orbit, base.mult * c.mult);
        for (b, ends) in self.base.sym_pos.iter().zip(&self.covers.sym_pos) {
            for c in ends {
                match c.kind {
                    CoverKind::Sym => u.sym_pos.push(lift(b, c)),
                    CoverKind::Pair => u.pair_pos.push(lift(b, c)),
                }
            }
        }
        for (b, ends) in self.base.sym_neg.iter().zip(&self.covers.sym_neg) {
            for c in ends {
                match c.kind {
                    CoverKind::Sym => u.sym_neg.push(lift(b, c)),
                    CoverKind::Pair => u.pair_neg.push(lift(b, c)),
                }
            }
        }
        for (b, ends) in self.base.pair_pos.iter().zip(&self.covers.pair_pos) {
            u.pair_pos.extend(ends.iter().map(|c| lift(b, c)));
        }
        for (b, ends) in self.base.pair_neg.iter().zip(&self.covers.pair_neg) {
            u.pair_neg.extend(ends.iter().map(|c| lift(b, c)));
        }
        u
    }
}

fn iterate_class(e: &End) -> Option<OrbitClass> {
    e.orbit.iterate(e.mult).ok().map(|o: OrbitSpec| o.class())
}

fn pairs_over(bases: &[End], covers: &[Vec<CoverEnd>], class: OrbitClass) -> u32 {
    bases
        .iter()
        .zip(covers)
        .filter(|(b, _)| iterate_class(b) == Some(class))
        .map(|(_, ends)| ends.iter().filter(|c| c.kind == CoverKind::Pair).count() as u32)
        .sum()
}

/// `(#1, #2)`: pairs covering a positive symmetric end asymptotic to a
/// positive hyperbolic type one orbit, and pairs covering a negative
/// symmetric end asymptotic to a positive hyperbolic type two orbit.
pub fn exceptional_counts(assign: &CoverAssignment) -> (u32, u32) {
    (
        pairs_over(&assign.base.sym_pos, &assign.covers.sym_pos, OrbitClass::PosHypOne),
        pairs_over(&assign.base.sym_neg, &assign.covers.sym_neg, OrbitClass::PosHypTwo),
    )
}

/// `D·ind(ū) + (B + 1 − D) − #1 − #2`.
pub fn cover_bound(assign: &CoverAssignment) -> Result<i64> {
    assign.validate()?;
    let (c1, c2) = exceptional_counts(assign);
    let d = i64::from(assign.degree);
    Ok(d * ind_real(&assign.base)? + i64::from(assign.branch) + 1 - d - i64::from(c1) - i64::from(c2))
}

/// The cover bound next to the index of the assembled cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    pub base_index: i64,
    pub cover_index: i64,
    pub bound: i64,
    pub count1: u32,
    pub count2: u32,
}

impl CoverCheck {
    pub fn holds(&self) -> bool {
        self.cover_index >= self.bound
    }

    pub fn is_equality(&self) -> bool {
        self.cover_index == self.bound
    }
}

pub fn check_cover(assign: &CoverAssignment) -> Result<CoverCheck> {
    let bound = cover_bound(assign)?;
    let (count1, count2) = exceptional_counts(assign);
    Ok(CoverCheck {
        base_index: ind_real(&assign.base)?,
        cover_index: ind_real(&assign.assemble())?,
        bound,
        count1,
        count2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaKind {
    /// Cover of a nontrivial cylinder with one positive symmetric end:
    /// `ind(u) ≥ l + 2n − #2`.
    Lem1,
    /// Curve with one positive symmetric end and `l > 1` negative ones, not
    /// covering a cylinder: `ind(u) ≥ 1 − #2`.
    Lem2,
    /// Cylinder covering a nontrivial cylinder: `1 ≤ ind(ū) ≤ ind(u)`.
    Lem3,
}

/// An evaluated lemma: `index ≥ bound` is the claim, and for the cylinder
/// lemma additionally `base_index ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBound {
    pub lemma: LemmaKind,
    pub index: i64,
    pub base_index: i64,
    pub bound: i64,
    pub count2: u32,
}

impl LemmaBound {
    pub fn holds(&self) -> bool {
        let base_ok = self.lemma != LemmaKind::Lem3 || self.base_index >= 1;
        base_ok && self.index >= self.bound
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(what.into()))
    }
}

/// Evaluates one of the three building lemmas on a cover after checking
/// its hypotheses.
pub fn lemma_a_bounds(assign: &CoverAssignment, lemma: LemmaKind) -> Result<LemmaBound> {
    assign.validate()?;
    let u = assign.assemble();
    let base = &assign.base;
    let base_index = ind_real(base)?;
    let index = ind_real(&u)?;
    let (_, count2) = exceptional_counts(assign);
    let bound = match lemma {
        LemmaKind::Lem1 | LemmaKind::Lem2 => {
            require(
                u.sym_pos.len() == 1 && u.pair_pos.is_empty(),
                "u has exactly one positive puncture, and it is symmetric",
            )?;
            if lemma == LemmaKind::Lem1 {
                require(base.is_symmetric_cylinder(), "the underlying curve is a cylinder")?;
                require(!base.is_trivial_cylinder(), "the underlying cylinder is nontrivial")?;
                require(base_index >= 1, "the underlying curve has index at least 1")?;
                u.sym_neg.len() as i64 + 2 * u.pair_neg.len() as i64 - i64::from(count2)
            } else {
                require(u.sym_neg.len() > 1, "l > 1 negative symmetric punctures")?;
                require(base.puncture_count() != 2, "u is not a multiple cover of a cylinder")?;
                require(base_index >= 1, "the underlying curve has index at least 1")?;
                1 - i64::from(count2)
            }
        }
        LemmaKind::Lem3 => {
            require(u.is_symmetric_cylinder(), "u is a cylinder")?;
            require(base.is_symmetric_cylinder(), "the underlying curve is a cylinder")?;
            require(!base.is_trivial_cylinder(), "the underlying cylinder is nontrivial")?;
            require(base_index >= 1, "the underlying curve has index at least 1")?;
            base_index
        }
    };
    Ok(LemmaBound {
        lemma,
        index,
        base_index,
        bound,
        count2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::HalfInt;

    fn hyp(class: OrbitClass, twice: i64) -> OrbitSpec {
        OrbitSpec::hyperbolic(class, HalfInt::from_twice(twice)).unwrap()
    }

    fn cylinder(top: OrbitSpec, bottom: OrbitSpec) -> CurveConfig {
        CurveConfig::symmetric(vec![End::new(top, 1)], vec![End::new(bottom, 1)])
    }

    fn assignment(base: CurveConfig, degree: u32, top: Vec<CoverEnd>, bottom: Vec<CoverEnd>) -> CoverAssignment {
        let mut a = CoverAssignment {
            base,
            degree,
            branch: 0,
            covers: EndCovers {
                sym_pos: vec![top],
                sym_neg: vec![bottom],
                ..Default::default()
            },
        };
        a.branch = a.forced_branch().max(0) as u32;
        a
    }

    #[test]
    fn identity_cover_is_sharp() {
        let base = cylinder(hyp(OrbitClass::NegHypOne, 5), hyp(OrbitClass::NegHypOne, 3));
        let a = assignment(base, 1, vec![CoverEnd::sym(1)], vec![CoverEnd::sym(1)]);
        let c = check_cover(&a).unwrap();
        assert_eq!((c.bound, c.cover_index), (1, 1));
        assert!(c.is_equality());
    }

    #[test]
    fn double_cover_of_cylinder() {
        let base = cylinder(hyp(OrbitClass::NegHypOne, 5), hyp(OrbitClass::NegHypOne, 3));
        let a = assignment(base, 2, vec![CoverEnd::sym(2)], vec![CoverEnd::sym(2)]);
        assert_eq!(a.branch, 0);
        let c = check_cover(&a).unwrap();
        assert_eq!((c.cover_index, c.bound), (2, 1));
    }

    #[test]
    fn pair_over_type_one_end_lowers_bound() {
        let top = hyp(OrbitClass::PosHypOne, 5);
        let base = cylinder(top, hyp(OrbitClass::NegHypOne, 3));
        let a = assignment(base, 2, vec![CoverEnd::pair(1)], vec![CoverEnd::sym(2)]);
        assert_eq!(exceptional_counts(&a), (1, 0));
        let unlowered = 2 * ind_real(&a.base).unwrap() + i64::from(a.branch) + 1 - 2;
        assert_eq!(cover_bound(&a).unwrap(), unlowered - 1);
        assert!(check_cover(&a).unwrap().holds());
    }

    #[test]
    fn counts_type_two_pairs_at_negative_ends() {
        let base = cylinder(hyp(OrbitClass::NegHypOne, 7), hyp(OrbitClass::PosHypTwo, 1));
        let a = assignment(base, 4, vec![CoverEnd::sym(4)], vec![CoverEnd::pair(1), CoverEnd::pair(1)]);
        assert_eq!(exceptional_counts(&a), (0, 2));
        assert!(check_cover(&a).unwrap().holds());
    }

    #[test]
    fn validation_errors() {
        let base = cylinder(hyp(OrbitClass::NegHypOne, 5), hyp(OrbitClass::NegHypOne, 3));
        let a = assignment(base.clone(), 2, vec![CoverEnd::sym(1)], vec![CoverEnd::sym(2)]);
        assert!(matches!(cover_bound(&a), Err(Error::MultiplicityMismatch(_))));
        let mut a = assignment(base, 2, vec![CoverEnd::sym(2)], vec![CoverEnd::sym(2)]);
        a.branch = 2;
        assert!(matches!(cover_bound(&a), Err(Error::RiemannHurwitzViolation(_))));
    }

    #[test]
    fn lemma_examples() {
        let base = cylinder(hyp(OrbitClass::NegHypOne, 5), hyp(OrbitClass::NegHypOne, 3));
        let a = assignment(base.clone(), 2, vec![CoverEnd::sym(2)], vec![CoverEnd::sym(2)]);
        let r = lemma_a_bounds(&a, LemmaKind::Lem3).unwrap();
        assert_eq!((r.base_index, r.index), (1, 2));
        assert!(r.holds());

        let a = assignment(base.clone(), 2, vec![CoverEnd::sym(2)], vec![CoverEnd::sym(1), CoverEnd::sym(1)]);
        let r = lemma_a_bounds(&a, LemmaKind::Lem1).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.holds());

        let a = assignment(base, 1, vec![CoverEnd::sym(1)], vec![CoverEnd::sym(1)]);
        match lemma_a_bounds(&a, LemmaKind::Lem2) {
            Err(Error::HypothesisViolation(msg)) => assert!(msg.contains("l > 1")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
