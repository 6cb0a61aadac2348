//! Holomorphic buildings and the two results about them: the index of a
//! building capping off a single brake orbit, and the exclusion of the
//! pair-of-pants breaking of index-one cylinders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::HalfInt;
use crate::fredholm::{ind_real, CurveConfig, End};
use crate::orbits::OrbitSpec;

/// Levels from top to bottom; each level is a list of components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Building {
    pub levels: Vec<Vec<CurveConfig>>,
}

type EndSet = (Vec<End>, Vec<End>);

fn positive_ends(level: &[CurveConfig]) -> EndSet {
    let sym = level.iter().flat_map(|c| c.sym_pos.iter().copied()).collect();
    let pairs = level.iter().flat_map(|c| c.pair_pos.iter().copied()).collect();
    (sym, pairs)
}

fn negative_ends(level: &[CurveConfig]) -> EndSet {
    let sym = level.iter().flat_map(|c| c.sym_neg.iter().copied()).collect();
    let pairs = level.iter().flat_map(|c| c.pair_neg.iter().copied()).collect();
    (sym, pairs)
}

fn same_multiset(a: &[End], b: &[End]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut rest = b.to_vec();
    for e in a {
        match rest.iter().position(|x| x == e) {
            Some(i) => {
                rest.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

impl Building {
    pub fn new(levels: Vec<Vec<CurveConfig>>) -> Self {
        Building { levels }
    }

    /// Checks that the negative ends of each level are the positive ends
    /// of the next.
    pub fn check_matching(&self) -> Result<()> {
        for (i, w) in self.levels.windows(2).enumerate() {
            let (upper, lower) = (negative_ends(&w[0]), positive_ends(&w[1]));
            if !same_multiset(&upper.0, &lower.0) || !same_multiset(&upper.1, &lower.1) {
                return Err(Error::EndMismatch(format!(
                    "negative ends of level {i} differ from positive ends of level {}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn components(&self) -> impl Iterator<Item = &CurveConfig> {
        self.levels.iter().flatten()
    }

    pub fn puncture_count(&self) -> usize {
        self.components().map(CurveConfig::puncture_count).sum()
    }
}

/// The sum of the Real indices of all components.
pub fn building_index(b: &Building) -> Result<i64> {
    b.check_matching()?;
    b.components().map(ind_real).sum()
}

/// `μ1 ≥ 3/2` and `μ_CZ ≥ 3` for every orbit.
pub fn is_dynamically_convex(orbits: &[OrbitSpec]) -> bool {
    orbits.iter().all(|o| {
        matches!((o.mu1(1), o.mu_cz(1)), (Ok(m), Ok(cz)) if m >= HalfInt::from_twice(3) && cz >= 3)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneBuildingReport {
    pub index: i64,
    pub levels: usize,
    pub components: usize,
    /// The building is one level holding one plane.
    pub single_plane: bool,
}

impl PlaneBuildingReport {
    pub fn is_equality(&self) -> bool {
        self.index == 1
    }

    /// `index ≥ 1`, with equality only for a single plane.
    pub fn holds(&self) -> bool {
        self.index >= 1 && (!self.is_equality() || self.single_plane)
    }
}

/// Evaluates a genus-zero building with one symmetric positive puncture
/// and no negative punctures over a dynamically convex orbit set.
pub fn plane_building_check(b: &Building) -> Result<PlaneBuildingReport> {
    let malformed = |msg: &str| Err(Error::MalformedBuilding(msg.into()));
    let (Some(top), Some(bottom)) = (b.levels.first(), b.levels.last()) else {
        return malformed("a building needs at least one level");
    };
    if b.levels.iter().any(Vec::is_empty) {
        return malformed("every level needs a component");
    }
    if b.components().any(|c| c.genus != 0) {
        return malformed("components must have genus zero");
    }
    let (sym, pairs) = positive_ends(top);
    if sym.len() != 1 || !pairs.is_empty() {
        return malformed("the top level must have exactly one positive puncture, symmetric");
    }
    let (sym, pairs) = negative_ends(bottom);
    if !sym.is_empty() || !pairs.is_empty() {
        return malformed("the bottom level must have no negative punctures");
    }
    let index = building_index(b)?;
    for c in b.components() {
        let orbits = c.end_orbits()?;
        if let Some(bad) = orbits.iter().find(|o| !is_dynamically_convex(std::slice::from_ref(o))) {
            return Err(Error::NotDynamicallyConvex(bad.to_string()));
        }
    }
    let components = b.components().count();
    let single_plane = b.levels.len() == 1 && components == 1 && top[0].puncture_count() == 1;
    Ok(PlaneBuildingReport {
        index,
        levels: b.levels.len(),
        components,
        single_plane,
    })
}

/// The inequality chain ruling out the breaking of an index-one cylinder
/// from `β^{d+1}` to `β^d` into a pair of pants over a plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadBreakingTrace {
    pub d: u32,
    pub mu1: HalfInt,
    /// `d(2μ1(β) + 1) + 3/2`, the lower bound on `μ1(β^{d+1})` from the
    /// writhe estimates and adjunction.
    pub required: HalfInt,
    /// `(d+1)μ1(β) + d/2`, the iteration upper bound on `μ1(β^{d+1})`.
    pub upper: HalfInt,
    /// `−d/2 − 3/2`, the left end of the final chain.
    pub lhs: HalfInt,
    /// `(d−1)μ1(β)`, the middle of the final chain.
    pub middle: HalfInt,
    /// `μ1(β^{d+1})` from the iteration formulae, when nondegenerate.
    pub actual: Option<HalfInt>,
    /// Whether `μ1(β^{d+1}) − μ1(β^d) = 1`, the index-one condition.
    pub index_one: Option<bool>,
}

impl BadBreakingTrace {
    /// Both forms of the contradiction: the required lower bound exceeds
    /// the upper bound, and `−d/2 − 3/2 < 0 ≤ (d−1)μ1(β)`.
    pub fn contradiction(&self) -> bool {
        self.required > self.upper && self.lhs < self.middle && self.middle >= HalfInt::ZERO
    }
}

pub fn bad_breaking_excluded(d: u32, spec: &OrbitSpec) -> Result<BadBreakingTrace> {
    if d == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let mu1 = spec.mu1(1)?;
    if mu1 < HalfInt::from_twice(3) {
        return Err(Error::NotDynamicallyConvex(format!("{spec}: mu1 = {mu1} < 3/2")));
    }
    let di = i64::from(d);
    let actual = spec.mu1(d + 1).ok();
    let index_one = match (actual, spec.mu1(d)) {
        (Some(top), Ok(bottom)) => Some(top - bottom == HalfInt::ONE),
        _ => None,
    };
    Ok(BadBreakingTrace {
        d,
        mu1,
        required: (mu1 * 2 + HalfInt::ONE) * di + HalfInt::from_twice(3),
        upper: mu1 * (di + 1) + HalfInt::from_twice(di),
        lhs: HalfInt::from_twice(-di - 3),
        middle: mu1 * (di - 1),
        actual,
        index_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::orbits::OrbitClass;

    fn hyp(class: OrbitClass, twice: i64) -> OrbitSpec {
        OrbitSpec::hyperbolic(class, HalfInt::from_twice(twice)).unwrap()
    }

    fn plane(o: OrbitSpec, mult: u32) -> CurveConfig {
        CurveConfig::symmetric(vec![End::new(o, mult)], vec![])
    }

    fn cylinder(top: End, bottom: End) -> CurveConfig {
        CurveConfig::symmetric(vec![top], vec![bottom])
    }

    #[test]
    fn index_examples() {
        let o = hyp(OrbitClass::NegHypOne, 3);
        assert_eq!(building_index(&Building::new(vec![vec![plane(o, 1)]])).unwrap(), 1);
        let top = hyp(OrbitClass::NegHypOne, 5);
        let two = Building::new(vec![
            vec![cylinder(End::new(top, 1), End::new(o, 1))],
            vec![plane(o, 1)],
        ]);
        assert_eq!(building_index(&two).unwrap(), 2);
        let e = End::new(o, 1);
        let with_trivial = Building::new(vec![
            vec![CurveConfig::symmetric(vec![End::new(top, 1)], vec![e, e])],
            vec![cylinder(e, e), plane(o, 1)],
            vec![plane(o, 1)],
        ]);
        let without = Building::new(vec![
            vec![CurveConfig::symmetric(vec![End::new(top, 1)], vec![e, e])],
            vec![plane(o, 1), plane(o, 1)],
        ]);
        assert_eq!(building_index(&with_trivial).unwrap(), building_index(&without).unwrap());
    }

    #[test]
    fn mismatched_levels() {
        let o = hyp(OrbitClass::NegHypOne, 3);
        let b = Building::new(vec![vec![plane(o, 1)], vec![plane(o, 1)]]);
        assert!(matches!(building_index(&b), Err(Error::EndMismatch(_))));
    }

    #[test]
    fn convexity_examples() {
        assert!(is_dynamically_convex(&[hyp(OrbitClass::NegHypOne, 3)]));
        assert!(!is_dynamically_convex(&[hyp(OrbitClass::NegHypOne, 1)]));
        assert!(!is_dynamically_convex(&[OrbitSpec::elliptic(Rational::new(5, 17)).unwrap()]));
        assert!(!is_dynamically_convex(&[hyp(OrbitClass::PosHypOne, 3)]));
    }

    #[test]
    fn plane_building_examples() {
        let o = hyp(OrbitClass::NegHypOne, 3);
        let r = plane_building_check(&Building::new(vec![vec![plane(o, 1)]])).unwrap();
        assert_eq!(r.index, 1);
        assert!(r.is_equality() && r.single_plane && r.holds());

        let top = hyp(OrbitClass::NegHypOne, 5);
        let b = Building::new(vec![
            vec![cylinder(End::new(top, 1), End::new(o, 1))],
            vec![plane(o, 1)],
        ]);
        let r = plane_building_check(&b).unwrap();
        assert!(r.index >= 2 && r.holds());

        let r = plane_building_check(&Building::new(vec![vec![plane(top, 1)]])).unwrap();
        assert_eq!(r.index, 2);
        assert!(!r.is_equality());
    }

    #[test]
    fn plane_building_preconditions() {
        let low = hyp(OrbitClass::NegHypOne, 1);
        assert!(matches!(
            plane_building_check(&Building::new(vec![vec![plane(low, 1)]])),
            Err(Error::NotDynamicallyConvex(_))
        ));
        let o = hyp(OrbitClass::NegHypOne, 3);
        let cyl = cylinder(End::new(o, 1), End::new(o, 1));
        assert!(matches!(
            plane_building_check(&Building::new(vec![vec![cyl]])),
            Err(Error::MalformedBuilding(_))
        ));
    }

    #[test]
    fn bad_breaking_examples() {
        let s = hyp(OrbitClass::NegHypOne, 3);
        let t = bad_breaking_excluded(1, &s).unwrap();
        assert_eq!((t.required, t.upper), (HalfInt::from_twice(11), HalfInt::from_twice(7)));
        assert!(t.contradiction());
        let t = bad_breaking_excluded(3, &s).unwrap();
        assert_eq!(t.lhs, HalfInt::from_int(-3));
        assert!(t.contradiction());
        assert!(matches!(
            bad_breaking_excluded(1, &hyp(OrbitClass::NegHypOne, 1)),
            Err(Error::NotDynamicallyConvex(_))
        ));
    }
}
