//! Fredholm indices of Real curves and of Real branched covers of trivial
//! cylinders.
//!
//! A [`CurveConfig`] records only what the index formulas see: genus,
//! relative first Chern number, and four lists of asymptotic ends. A
//! symmetric end contributes `μ1` of its iterate, a pair of nonsymmetric
//! ends contributes `μ_CZ` once and counts twice in the Euler
//! characteristic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ceil, floor, HalfInt, Rational};
use crate::orbits::{OrbitClass, OrbitSpec};

/// One asymptotic end: an orbit and the multiplicity it is covered with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct End {
    pub orbit: OrbitSpec,
    pub mult: u32,
}

impl End {
    pub fn new(orbit: OrbitSpec, mult: u32) -> Self {
        End { orbit, mult }
    }

    /// `μ1` of the iterate this end is asymptotic to.
    pub fn mu1(&self) -> Result<HalfInt> {
        self.check()?;
        self.orbit.mu1(self.mult)
    }

    /// `μ_CZ` of the iterate this end is asymptotic to.
    pub fn mu_cz(&self) -> Result<i64> {
        self.check()?;
        self.orbit.mu_cz(self.mult)
    }

    fn check(&self) -> Result<()> {
        if self.mult == 0 {
            Err(Error::InvalidMultiplicity)
        } else {
            Ok(())
        }
    }
}

/// The combinatorial data of a Real pseudoholomorphic curve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub genus: u32,
    pub c1: i64,
    #[serde(default)]
    pub sym_pos: Vec<End>,
    #[serde(default)]
    pub sym_neg: Vec<End>,
    #[serde(default)]
    pub pair_pos: Vec<End>,
    #[serde(default)]
    pub pair_neg: Vec<End>,
}

impl CurveConfig {
    /// A genus-zero curve with `c1 = 0` and the given symmetric ends.
    pub fn symmetric(sym_pos: Vec<End>, sym_neg: Vec<End>) -> Self {
        CurveConfig {
            sym_pos,
            sym_neg,
            ..Default::default()
        }
    }

    /// Number of punctures, a pair counting as two.
    pub fn puncture_count(&self) -> usize {
        self.sym_pos.len() + self.sym_neg.len() + 2 * (self.pair_pos.len() + self.pair_neg.len())
    }

    pub fn has_symmetric_ends(&self) -> bool {
        !(self.sym_pos.is_empty() && self.sym_neg.is_empty())
    }

    /// Whether this is the trivial cylinder over a single symmetric end.
    pub fn is_trivial_cylinder(&self) -> bool {
        self.genus == 0
            && self.c1 == 0
            && self.pair_pos.is_empty()
            && self.pair_neg.is_empty()
            && self.sym_pos.len() == 1
            && self.sym_neg.len() == 1
            && self.sym_pos[0] == self.sym_neg[0]
    }

    /// Whether the domain is a cylinder with symmetric ends.
    pub fn is_symmetric_cylinder(&self) -> bool {
        self.genus == 0
            && self.pair_pos.is_empty()
            && self.pair_neg.is_empty()
            && self.sym_pos.len() == 1
            && self.sym_neg.len() == 1
    }

    /// Every orbit appearing at some end, as the iterate it is covered by.
    pub fn end_orbits(&self) -> Result<Vec<OrbitSpec>> {
        self.ends().map(|e| e.orbit.iterate(e.mult)).collect()
    }

    fn ends(&self) -> impl Iterator<Item = &End> {
        self.sym_pos
            .iter()
            .chain(&self.sym_neg)
            .chain(&self.pair_pos)
            .chain(&self.pair_neg)
    }

    /// The curve seen as an ordinary (non-Real) curve: same genus and
    /// `c1`, each pair of ends listed twice.
    ///
    /// Only meaningful when there are no symmetric ends.
    pub fn doubled(&self) -> Result<DoubledCurve> {
        if self.has_symmetric_ends() {
            return Err(Error::UnsupportedClass(
                "doubling a curve with symmetric ends".into(),
            ));
        }
        let twice = |v: &[End]| v.iter().flat_map(|e| [*e, *e]).collect();
        Ok(DoubledCurve {
            genus: self.genus,
            c1: self.c1,
            pos: twice(&self.pair_pos),
            neg: twice(&self.pair_neg),
        })
    }
}

/// Data of an ordinary curve for [`ind_nonsymmetric`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubledCurve {
    pub genus: u32,
    pub c1: i64,
    pub pos: Vec<End>,
    pub neg: Vec<End>,
}

/// `χ = 2 − 2g − #symmetric − 2·#pairs`.
pub fn euler_characteristic(cfg: &CurveConfig) -> i64 {
    2 - 2 * i64::from(cfg.genus) - cfg.puncture_count() as i64
}

/// The Real Fredholm index
/// `−½χ + c1 + Σ μ1(β_i) − Σ μ1(β'_j) + Σ μ_CZ(α_p) − Σ μ_CZ(α'_q)`.
pub fn ind_real(cfg: &CurveConfig) -> Result<i64> {
    let mut total = HalfInt::from_twice(-euler_characteristic(cfg)) + HalfInt::from_int(cfg.c1);
    for e in &cfg.sym_pos {
        total += e.mu1()?;
    }
    for e in &cfg.sym_neg {
        total -= e.mu1()?;
    }
    for e in &cfg.pair_pos {
        total += HalfInt::from_int(e.mu_cz()?);
    }
    for e in &cfg.pair_neg {
        total -= HalfInt::from_int(e.mu_cz()?);
    }
    total
        .to_integer()
        .ok_or_else(|| Error::NonIntegralIndex(total.to_string()))
}

/// The Fredholm index `−χ + 2c1 + Σ μ_CZ(α_p) − Σ μ_CZ(α'_q)` of an
/// ordinary curve, every puncture counted once in `χ`.
pub fn ind_nonsymmetric(genus: u32, c1: i64, pos: &[End], neg: &[End]) -> Result<i64> {
    let chi = 2 - 2 * i64::from(genus) - (pos.len() + neg.len()) as i64;
    let mut total = -chi + 2 * c1;
    for e in pos {
        total += e.mu_cz()?;
    }
    for e in neg {
        total -= e.mu_cz()?;
    }
    Ok(total)
}

/// A Real branched cover of the trivial cylinder over `orbit`.
///
/// `a`, `b` are the multiplicities of the positive and negative symmetric
/// ends, `c`, `d` those of the positive and negative pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivialCylinderCover {
    pub orbit: OrbitSpec,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub a: Vec<u32>,
    #[serde(default)]
    pub b: Vec<u32>,
    #[serde(default)]
    pub c: Vec<u32>,
    #[serde(default)]
    pub d: Vec<u32>,
}

impl TrivialCylinderCover {
    /// Checks positivity, non-emptiness, parity and balance, in that order.
    pub fn validate(&self) -> Result<()> {
        let all = self.a.iter().chain(&self.b).chain(&self.c).chain(&self.d);
        if all.into_iter().any(|&m| m == 0) {
            return Err(Error::InvalidMultiplicity);
        }
        if self.a.is_empty() || self.b.is_empty() {
            return Err(Error::EmptyEnds);
        }
        let odd = |v: &[u32]| v.iter().filter(|&&m| m % 2 == 1).count();
        let (ko, lo) = (odd(&self.a), odd(&self.b));
        if ko % 2 != lo % 2 {
            return Err(Error::ParityViolation {
                positive: ko,
                negative: lo,
            });
        }
        check_balance(&self.a, &self.b, &self.c, &self.d)
    }

    /// The same curve as a [`CurveConfig`] with `c1 = 0`.
    pub fn to_config(&self) -> CurveConfig {
        let ends = |v: &[u32]| v.iter().map(|&m| End::new(self.orbit, m)).collect();
        CurveConfig {
            genus: self.genus,
            c1: 0,
            sym_pos: ends(&self.a),
            sym_neg: ends(&self.b),
            pair_pos: ends(&self.c),
            pair_neg: ends(&self.d),
        }
    }

    /// Total covering multiplicity `Σa + 2Σc`.
    pub fn total_multiplicity(&self) -> u64 {
        side_total(&self.a, &self.c)
    }
}

fn side_total(sym: &[u32], pairs: &[u32]) -> u64 {
    sym.iter().map(|&m| u64::from(m)).sum::<u64>() + 2 * pairs.iter().map(|&m| u64::from(m)).sum::<u64>()
}

fn check_balance(a: &[u32], b: &[u32], c: &[u32], d: &[u32]) -> Result<()> {
    let (positive, negative) = (side_total(a, c), side_total(b, d));
    if positive != negative {
        return Err(Error::BalanceViolation { positive, negative });
    }
    Ok(())
}

/// `(ε1, ε2)`: the constant offset of `μ1(β^j) − j·μ1(β)` for odd and even
/// `j`, once the linear parts cancel by balance.
fn hyperbolic_offsets(class: OrbitClass) -> (HalfInt, HalfInt) {
    let h = HalfInt::HALF;
    match class {
        OrbitClass::NegHypOne => (HalfInt::ZERO, h),
        OrbitClass::NegHypTwo => (HalfInt::ZERO, -h),
        OrbitClass::PosHypOne => (h, h),
        OrbitClass::PosHypTwo => (-h, -h),
        OrbitClass::Elliptic => unreachable!("elliptic covers use ind_theta"),
    }
}

/// The Real index of a branched cover of a trivial cylinder, evaluated by
/// the per-class closed forms rather than by summing end contributions.
pub fn trivial_cover_index(cover: &TrivialCylinderCover) -> Result<i64> {
    cover.validate()?;
    let spec = cover.orbit;
    if let Some(theta) = spec.theta() {
        let t = ind_theta(theta, &cover.a, &cover.b, &cover.c, &cover.d)?;
        return Ok(i64::from(cover.genus) + t.value);
    }
    let count = |v: &[u32]| v.len() as i64;
    let odd = |v: &[u32]| v.iter().filter(|&&m| m % 2 == 1).count() as i64;
    let (k, l, m, n) = (count(&cover.a), count(&cover.b), count(&cover.c), count(&cover.d));
    let (k1, l1) = (odd(&cover.a), odd(&cover.b));
    let (e1, e2) = hyperbolic_offsets(spec.class());
    let base = HalfInt::from_twice(2 * i64::from(cover.genus) + k + l + 2 * m + 2 * n - 2);
    let total = base + e1 * (k1 - l1) + e2 * ((k - k1) - (l - l1));
    total
        .to_integer()
        .ok_or_else(|| Error::NonIntegralIndex(total.to_string()))
}

/// Value of [`ind_theta`] together with whether both of its defining
/// inequalities are equalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaIndex {
    pub value: i64,
    pub equality: bool,
}

/// `Σ⌈a_iθ⌉ − Σ⌊b_jθ⌋ + 2Σ⌈c_pθ⌉ − 2Σ⌊d_qθ⌋ − 1` for a balanced tuple.
///
/// The equality flag is set when `Σ⌈a_iθ⌉ + 2Σ⌈c_pθ⌉ = ⌈Mθ⌉` and
/// `⌊Mθ⌋ = Σ⌊b_jθ⌋ + 2Σ⌊d_qθ⌋`, with `M` the total multiplicity.
pub fn ind_theta(theta: Rational, a: &[u32], b: &[u32], c: &[u32], d: &[u32]) -> Result<ThetaIndex> {
    check_balance(a, b, c, d)?;
    let scaled = |m: u32| -> Result<Rational> {
        if m == 0 {
            return Err(Error::InvalidMultiplicity);
        }
        let x = theta * Rational::from_integer(i64::from(m));
        if x.is_integer() {
            return Err(Error::DegenerateIterate { theta, k: m });
        }
        Ok(x)
    };
    let sum = |v: &[u32], f: fn(Rational) -> i64| -> Result<i64> {
        v.iter().map(|&m| scaled(m).map(f)).sum()
    };
    let upper = sum(a, ceil)? + 2 * sum(c, ceil)?;
    let lower = sum(b, floor)? + 2 * sum(d, floor)?;
    let total = theta * Rational::from_integer(side_total(a, c) as i64);
    let equality = upper == ceil(total) && floor(total) == lower;
    Ok(ThetaIndex {
        value: upper - lower - 1,
        equality,
    })
}
