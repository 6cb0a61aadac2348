//! Abstract brake orbits and their iteration formulae.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{floor, parse_rational, HalfInt, Rational};

/// The five classes a nondegenerate brake orbit in dimension three falls into.
///
/// Hyperbolic orbits split into type one and type two by the sign of
/// `μ1(β²) − μ2(β²)`: `+1` for type one, `−1` for type two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitClass {
    #[serde(rename = "elliptic")]
    Elliptic,
    #[serde(rename = "neg-hyp-1")]
    NegHypOne,
    #[serde(rename = "neg-hyp-2")]
    NegHypTwo,
    #[serde(rename = "pos-hyp-1")]
    PosHypOne,
    #[serde(rename = "pos-hyp-2")]
    PosHypTwo,
}

impl OrbitClass {
    pub const ALL: [OrbitClass; 5] = [
        OrbitClass::Elliptic,
        OrbitClass::NegHypOne,
        OrbitClass::NegHypTwo,
        OrbitClass::PosHypOne,
        OrbitClass::PosHypTwo,
    ];

    pub const HYPERBOLIC: [OrbitClass; 4] = [
        OrbitClass::NegHypOne,
        OrbitClass::NegHypTwo,
        OrbitClass::PosHypOne,
        OrbitClass::PosHypTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrbitClass::Elliptic => "elliptic",
            OrbitClass::NegHypOne => "neg-hyp-1",
            OrbitClass::NegHypTwo => "neg-hyp-2",
            OrbitClass::PosHypOne => "pos-hyp-1",
            OrbitClass::PosHypTwo => "pos-hyp-2",
        }
    }

    pub fn is_elliptic(self) -> bool {
        self == OrbitClass::Elliptic
    }

    pub fn is_hyperbolic(self) -> bool {
        !self.is_elliptic()
    }

    pub fn is_positive_hyperbolic(self) -> bool {
        matches!(self, OrbitClass::PosHypOne | OrbitClass::PosHypTwo)
    }

    pub fn is_negative_hyperbolic(self) -> bool {
        matches!(self, OrbitClass::NegHypOne | OrbitClass::NegHypTwo)
    }

    /// `Some(1)` for type one, `Some(2)` for type two, `None` for elliptic.
    pub fn hyperbolic_type(self) -> Option<u8> {
        match self {
            OrbitClass::NegHypOne | OrbitClass::PosHypOne => Some(1),
            OrbitClass::NegHypTwo | OrbitClass::PosHypTwo => Some(2),
            OrbitClass::Elliptic => None,
        }
    }

    /// Class of the time-reversed orbit: type one and type two swap.
    pub fn reversed(self) -> OrbitClass {
        match self {
            OrbitClass::Elliptic => OrbitClass::Elliptic,
            OrbitClass::NegHypOne => OrbitClass::NegHypTwo,
            OrbitClass::NegHypTwo => OrbitClass::NegHypOne,
            OrbitClass::PosHypOne => OrbitClass::PosHypTwo,
            OrbitClass::PosHypTwo => OrbitClass::PosHypOne,
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrbitClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown orbit class {s:?}")))
    }
}

/// The index seed an orbit is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    /// Rotation number per period, in full turns.
    Theta(Rational),
    /// `μ1(β)` of a hyperbolic orbit.
    Mu1(HalfInt),
}

/// An abstract brake orbit: its class plus the trivialized index seed.
///
/// For elliptic orbits the seed is the rotation number `θ` and
/// `μ1(β) = ⌊θ⌋ + ½` is derived from it. For hyperbolic orbits the seed is
/// `μ1(β)` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrbitSpecRepr", into = "OrbitSpecRepr")]
pub struct OrbitSpec {
    class: OrbitClass,
    theta: Option<Rational>,
    mu1_base: HalfInt,
}

impl OrbitSpec {
    /// Validates a seed against its class.
    pub fn new(class: OrbitClass, seed: Seed) -> Result<Self> {
        match (class, seed) {
            (OrbitClass::Elliptic, Seed::Theta(theta)) => Self::elliptic(theta),
            (OrbitClass::Elliptic, Seed::Mu1(_)) => Err(Error::SeedMismatch(format!(
                "{class}: expected a rotation number theta"
            ))),
            (_, Seed::Mu1(mu1)) => Self::hyperbolic(class, mu1),
            (_, Seed::Theta(_)) => Err(Error::SeedMismatch(format!(
                "{class}: expected a half-integer mu1"
            ))),
        }
    }

    pub fn elliptic(theta: Rational) -> Result<Self> {
        if theta.is_integer() {
            return Err(Error::DegenerateOrbit(format!(
                "integer rotation number {theta}"
            )));
        }
        Ok(OrbitSpec {
            class: OrbitClass::Elliptic,
            theta: Some(theta),
            mu1_base: HalfInt::from_twice(2 * floor(theta) + 1),
        })
    }

    pub fn hyperbolic(class: OrbitClass, mu1: HalfInt) -> Result<Self> {
        if class.is_elliptic() {
            return Err(Error::SeedMismatch(format!(
                "{class}: expected a half-integer mu1"
            )));
        }
        if mu1.is_integer() {
            return Err(Error::ParityError(mu1.to_string()));
        }
        Ok(OrbitSpec {
            class,
            theta: None,
            mu1_base: mu1,
        })
    }

    pub fn class(&self) -> OrbitClass {
        self.class
    }

    /// Rotation number of an elliptic orbit.
    pub fn theta(&self) -> Option<Rational> {
        self.theta
    }

    /// `μ1(β)` in the chosen trivialization.
    pub fn mu1_base(&self) -> HalfInt {
        self.mu1_base
    }

    /// `μ1(β^k)`.
    pub fn mu1(&self, k: u32) -> Result<HalfInt> {
        let m = self.mu1_base;
        let ki = i64::from(k);
        Ok(match self.class {
            OrbitClass::Elliptic => HalfInt::from_twice(2 * self.floor_k_theta(k)? + 1),
            OrbitClass::NegHypOne if k.is_multiple_of(2) => m * ki + HalfInt::HALF,
            OrbitClass::NegHypTwo if k.is_multiple_of(2) => m * ki - HalfInt::HALF,
            OrbitClass::NegHypOne | OrbitClass::NegHypTwo => m * ki,
            OrbitClass::PosHypOne => m * ki + HalfInt::from_twice(1 - ki),
            OrbitClass::PosHypTwo => m * ki + HalfInt::from_twice(ki - 1),
        })
    }

    /// `μ_CZ(β^k)`.
    pub fn mu_cz(&self, k: u32) -> Result<i64> {
        let twice_m = self.mu1_base.twice();
        let ki = i64::from(k);
        Ok(match self.class {
            OrbitClass::Elliptic => 2 * self.floor_k_theta(k)? + 1,
            OrbitClass::NegHypOne | OrbitClass::NegHypTwo => ki * twice_m,
            OrbitClass::PosHypOne => ki * twice_m - ki,
            OrbitClass::PosHypTwo => ki * twice_m + ki,
        })
    }

    /// `μ2(β^k) = μ_CZ(β^k) − μ1(β^k)`.
    pub fn mu2(&self, k: u32) -> Result<HalfInt> {
        Ok(HalfInt::from_int(self.mu_cz(k)?) - self.mu1(k)?)
    }

    /// Whether the `k`-th iterate is nondegenerate.
    pub fn admits(&self, k: u32) -> bool {
        match self.theta {
            Some(theta) => !(theta * Rational::from_integer(i64::from(k))).is_integer(),
            None => true,
        }
    }

    fn floor_k_theta(&self, k: u32) -> Result<i64> {
        let theta = self.theta.expect("elliptic spec carries theta");
        let x = theta * Rational::from_integer(i64::from(k));
        if x.is_integer() {
            return Err(Error::DegenerateIterate { theta, k });
        }
        Ok(floor(x))
    }

    /// The orbit traversed backwards.
    ///
    /// Reversal negates `θ` for elliptic orbits and swaps type one with
    /// type two for hyperbolic ones, carrying the trivialization along so
    /// that `μ1` changes sign.
    pub fn reverse(&self) -> OrbitSpec {
        match self.theta {
            Some(theta) => OrbitSpec {
                class: OrbitClass::Elliptic,
                theta: Some(-theta),
                mu1_base: HalfInt::from_twice(2 * floor(-theta) + 1),
            },
            None => OrbitSpec {
                class: self.class.reversed(),
                theta: None,
                mu1_base: -self.mu1_base,
            },
        }
    }

    /// `β^j` viewed as a brake orbit in its own right.
    ///
    /// Even iterates of negative hyperbolic orbits are positive hyperbolic
    /// of the same type; all other classes are preserved. The result
    /// satisfies `iterate(j).mu1(k) == mu1(j * k)`.
    pub fn iterate(&self, j: u32) -> Result<OrbitSpec> {
        if j == 0 {
            return Err(Error::InvalidMultiplicity);
        }
        match self.theta {
            Some(theta) => OrbitSpec::elliptic(theta * Rational::from_integer(i64::from(j)))
                .map_err(|_| Error::DegenerateIterate { theta, k: j }),
            None => {
                let class = match self.class {
                    OrbitClass::NegHypOne if j.is_multiple_of(2) => OrbitClass::PosHypOne,
                    OrbitClass::NegHypTwo if j.is_multiple_of(2) => OrbitClass::PosHypTwo,
                    c => c,
                };
                OrbitSpec::hyperbolic(class, self.mu1(j)?)
            }
        }
    }

    /// Shifts the trivialization: `μ1` moves by `s` for hyperbolic orbits,
    /// `θ` moves by `s` full turns for elliptic ones.
    pub fn shifted(&self, s: i64) -> OrbitSpec {
        match self.theta {
            Some(theta) => OrbitSpec::elliptic(theta + Rational::from_integer(s))
                .expect("integer shift keeps theta non-integral"),
            None => OrbitSpec {
                mu1_base: self.mu1_base + HalfInt::from_int(s),
                ..*self
            },
        }
    }

    /// The half-period index quadruple of a hyperbolic orbit.
    pub fn half_period_indices(&self) -> Result<HalfPeriodIndices> {
        let i0 = (self.mu1_base - HalfInt::HALF)
            .to_integer()
            .expect("mu1 is a strict half-integer");
        let (il1, il0_sqrt, il1_sqrt) = match self.class {
            OrbitClass::NegHypOne => (i0, i0 + 1, i0),
            OrbitClass::NegHypTwo => (i0, i0, i0 + 1),
            OrbitClass::PosHypOne => (i0 - 1, i0, i0),
            OrbitClass::PosHypTwo => (i0 + 1, i0 + 1, i0 + 1),
            OrbitClass::Elliptic => {
                return Err(Error::UnsupportedClass(
                    "half-period indices of elliptic orbits".into(),
                ))
            }
        };
        Ok(HalfPeriodIndices {
            il0: i0,
            il1,
            il0_sqrt,
            il1_sqrt,
        })
    }
}

impl fmt::Display for OrbitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.theta {
            Some(theta) => write!(f, "{}(theta={theta})", self.class),
            None => write!(f, "{}(mu1={})", self.class, self.mu1_base),
        }
    }
}

/// The indices `i_{L0}, i_{L1}, i^{L0}_{√−1}, i^{L1}_{√−1}` of a hyperbolic
/// brake orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPeriodIndices {
    pub il0: i64,
    pub il1: i64,
    pub il0_sqrt: i64,
    pub il1_sqrt: i64,
}

impl HalfPeriodIndices {
    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.il0, self.il1, self.il0_sqrt, self.il1_sqrt)
    }

    /// `i_{L0} ≤ i^{L0}_{√−1} ≤ i_{L0} + 1` and the same for `L1`.
    pub fn within_bounds(&self) -> bool {
        (self.il0..=self.il0 + 1).contains(&self.il0_sqrt)
            && (self.il1..=self.il1 + 1).contains(&self.il1_sqrt)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitSpecRepr {
    class: OrbitClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu1: Option<String>,
}

impl TryFrom<OrbitSpecRepr> for OrbitSpec {
    type Error = Error;

    fn try_from(r: OrbitSpecRepr) -> Result<Self> {
        let seed = match (r.theta, r.mu1) {
            (Some(t), None) => Seed::Theta(parse_rational(&t)?),
            (None, Some(m)) => Seed::Mu1(m.parse()?),
            _ => {
                return Err(Error::Parse(
                    "orbit needs exactly one of \"theta\" or \"mu1\"".into(),
                ))
            }
        };
        OrbitSpec::new(r.class, seed)
    }
}

impl From<OrbitSpec> for OrbitSpecRepr {
    fn from(s: OrbitSpec) -> Self {
        OrbitSpecRepr {
            class: s.class,
            theta: s.theta.map(|t| t.to_string()),
            mu1: s.theta.is_none().then(|| s.mu1_base.to_string()),
        }
    }
}
