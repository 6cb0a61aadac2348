//! Sp(2) monodromies of brake orbits and their classification.
//!
//! The full-period monodromy of a brake orbit is determined by the
//! half-period matrix `H = (u v; w x)` through `M = N H⁻¹ N H` with
//! `N = diag(−1, 1)`, which forces equal diagonal entries `a = d`.
//! Conjugation by `diag(ε, 1/ε)` changes trivialization only, so the class
//! is read off from `a` and the sign of `b`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::spec::OrbitClass;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, sign, Rational};

/// A 2×2 real symplectic matrix `(a b; c d)` with exact rational entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sp2Matrix {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Sp2Matrix {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_one() {
            return Err(Error::NotSymplectic(det));
        }
        Ok(Sp2Matrix { a, b, c, d })
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Parses four comma-separated rationals, row-major.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(&parts)
    }

    pub fn from_entries(entries: &[Rational]) -> Result<Self> {
        match *entries {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(Error::Parse(format!(
                "a 2x2 matrix needs four entries, got {}",
                entries.len()
            ))),
        }
    }

    pub fn identity() -> Self {
        Sp2Matrix {
            a: Rational::one(),
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    pub fn entries(&self) -> [Rational; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> Rational {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Sp2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn neg(&self) -> Self {
        Sp2Matrix {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn mul(&self, o: &Sp2Matrix) -> Self {
        Sp2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// `A M A⁻¹` with `A = diag(ε, 1/ε)`, a change of trivialization.
    pub fn conjugate_diagonal(&self, eps: Rational) -> Self {
        let e2 = eps * eps;
        Sp2Matrix {
            a: self.a,
            b: self.b * e2,
            c: self.c / e2,
            d: self.d,
        }
    }
}

impl fmt::Display for Sp2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Sp2Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries()
            .map(|r| r.to_string())
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sp2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let entries = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Sp2Matrix::from_entries(&entries).map_err(serde::de::Error::custom)
    }
}

/// Full-period monodromy `N H⁻¹ N H = (1+2vw, 2vx; 2uw, 1+2vw)` of a
/// half-period matrix `H = (u v; w x)`.
pub fn monodromy_from_half_period(h: &Sp2Matrix) -> Sp2Matrix {
    let [u, v, w, x] = h.entries();
    let two = Rational::from_integer(2);
    let diag = Rational::one() + two * v * w;
    Sp2Matrix {
        a: diag,
        b: two * v * x,
        c: two * u * w,
        d: diag,
    }
}

/// Classifies a full-period monodromy with `a = d`.
///
/// Returns the class and, for elliptic monodromies, the rotation angle in
/// turns modulo one whenever it is rational. By Niven's theorem that only
/// happens for `a ∈ {0, ±½}`; for every other elliptic `a` the angle is
/// irrational and `None` is returned.
pub fn classify_monodromy(m: &Sp2Matrix) -> Result<(OrbitClass, Option<Rational>)> {
    let [a, b, _c, d] = m.entries();
    if a != d {
        return Err(Error::AsymmetricMatrix { a, d });
    }
    let one = Rational::one();
    if a.abs() == one {
        return Err(Error::DegenerateOrbit(format!(
            "monodromy {m} has trace {}",
            m.trace()
        )));
    }
    if a.abs() < one {
        return Ok((OrbitClass::Elliptic, rational_angle(a, b)));
    }
    let class = match (a > one, b.is_positive()) {
        (true, false) => OrbitClass::PosHypOne,
        (true, true) => OrbitClass::PosHypTwo,
        (false, true) => OrbitClass::NegHypOne,
        (false, false) => OrbitClass::NegHypTwo,
    };
    Ok((class, None))
}

/// Angle φ in `[0, 1)` with `cos 2πφ = a` and `−sin 2πφ` of the sign of `b`.
fn rational_angle(a: Rational, b: Rational) -> Option<Rational> {
    let upper_half = b.is_negative();
    let base = if a.is_zero() {
        Rational::new(1, 4)
    } else if a == Rational::new(1, 2) {
        Rational::new(1, 6)
    } else if a == Rational::new(-1, 2) {
        Rational::new(1, 3)
    } else {
        return None;
    };
    Some(if upper_half { base } else { Rational::one() - base })
}

/// Classifies a half-period matrix directly from the signs of its entries.
///
/// `H` and `−H` determine the same monodromy and classify identically.
pub fn classify_half_period(h: &Sp2Matrix) -> Result<OrbitClass> {
    let [u, v, w, x] = h.entries();
    let vw = v * w;
    if vw.is_zero() || vw == -Rational::one() {
        return Err(Error::DegenerateOrbit(format!(
            "half-period matrix {h} has vw = {vw}"
        )));
    }
    if vw < Rational::zero() && vw > -Rational::one() {
        return Ok(OrbitClass::Elliptic);
    }
    // Normalize so that u > 0; u x = 1 + v w is nonzero off the boundary.
    let s = sign(u);
    let signs = [s * sign(v), s * sign(w), s * sign(x)];
    let class = match signs {
        [-1, -1, 1] => OrbitClass::PosHypOne,
        [1, 1, 1] => OrbitClass::PosHypTwo,
        [-1, 1, -1] => OrbitClass::NegHypOne,
        [1, -1, -1] => OrbitClass::NegHypTwo,
        _ => unreachable!("sign pattern {signs:?} of symplectic {h}"),
    };
    Ok(class)
}

/// `±√r` for a nonnegative rational `r`, kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSqrt {
    pub sign: i8,
    #[serde(with = "crate::exact::rational_str")]
    pub square: Rational,
}

/// The diagonal-conjugation normal form `(a, s₁√r; s₂√r, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    #[serde(with = "crate::exact::rational_str")]
    pub a: Rational,
    pub upper: SignedSqrt,
    pub lower: SignedSqrt,
}

/// A point of the quotient "circle with four spikes".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuotientPoint {
    /// `R(2πφ)` on the unit circle; `turns` is `φ mod 1` when rational.
    Circle {
        #[serde(with = "crate::exact::rational_str")]
        cos: Rational,
        sin_positive: bool,
        #[serde(
            with = "crate::exact::opt_rational_str",
            skip_serializing_if = "Option::is_none",
            default
        )]
        turns: Option<Rational>,
    },
    /// Spike at `x = 1` with `y² = a² − 1`.
    PosSpike {
        #[serde(with = "crate::exact::rational_str")]
        y_squared: Rational,
        y_positive: bool,
    },
    /// Spike at `x = −1` with `y² = a² − 1`.
    NegSpike {
        #[serde(with = "crate::exact::rational_str")]
        y_squared: Rational,
        y_positive: bool,
    },
}

/// Normal form under diagonal conjugation and the matching quotient point.
pub fn canonical_form(m: &Sp2Matrix) -> Result<(CanonicalForm, QuotientPoint)> {
    let (class, turns) = classify_monodromy(m)?;
    let [a, b, _, _] = m.entries();
    let one = Rational::one();
    let sb = sign(b);
    if class.is_elliptic() {
        let square = one - a * a;
        let form = CanonicalForm {
            a,
            upper: SignedSqrt { sign: sb, square },
            lower: SignedSqrt { sign: -sb, square },
        };
        let point = QuotientPoint::Circle {
            cos: a,
            sin_positive: sb < 0,
            turns,
        };
        return Ok((form, point));
    }
    let y_squared = a * a - one;
    let off = SignedSqrt {
        sign: sb,
        square: y_squared,
    };
    let form = CanonicalForm {
        a,
        upper: off,
        lower: off,
    };
    let point = if class.is_positive_hyperbolic() {
        QuotientPoint::PosSpike {
            y_squared,
            y_positive: sb > 0,
        }
    } else {
        QuotientPoint::NegSpike {
            y_squared,
            y_positive: sb > 0,
        }
    };
    Ok((form, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(a: i64, b: i64, c: i64, d: i64) -> Sp2Matrix {
        Sp2Matrix::from_integers(a, b, c, d).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn half_period_to_monodromy_examples() {
        assert_eq!(monodromy_from_half_period(&mat(1, 1, 1, 2)), mat(3, 4, 2, 3));
        assert_eq!(
            monodromy_from_half_period(&Sp2Matrix::identity()),
            Sp2Matrix::identity()
        );
        assert_eq!(monodromy_from_half_period(&mat(1, -1, -1, 2)), mat(3, -4, -2, 3));
    }

    #[test]
    fn monodromy_equals_reflected_product() {
        let n = Sp2Matrix { a: r(-1, 1), b: r(0, 1), c: r(0, 1), d: r(1, 1) };
        for h in [mat(1, 1, 1, 2), mat(2, -1, 3, -1), mat(-3, 2, 1, -1)] {
            let direct = n.mul(&h.inverse()).mul(&n).mul(&h);
            assert_eq!(monodromy_from_half_period(&h), direct);
        }
    }

    #[test]
    fn not_symplectic() {
        assert!(matches!(
            Sp2Matrix::from_integers(1, 1, 1, 1),
            Err(Error::NotSymplectic(_))
        ));
        assert!(Sp2Matrix::new(r(1, 1), r(-1, 1), r(1, 1), r(1, 2)).is_err());
    }

    #[test]
    fn classify_monodromy_examples() {
        assert_eq!(classify_monodromy(&mat(3, 4, 2, 3)).unwrap().0, OrbitClass::PosHypTwo);
        assert_eq!(classify_monodromy(&mat(3, -4, -2, 3)).unwrap().0, OrbitClass::PosHypOne);
        assert_eq!(classify_monodromy(&mat(-3, 4, 2, -3)).unwrap().0, OrbitClass::NegHypOne);
        assert_eq!(classify_monodromy(&mat(-3, -4, -2, -3)).unwrap().0, OrbitClass::NegHypTwo);
        assert!(matches!(
            classify_monodromy(&Sp2Matrix::identity()),
            Err(Error::DegenerateOrbit(_))
        ));
        assert!(matches!(
            classify_monodromy(&mat(-1, 1, 0, -1)),
            Err(Error::DegenerateOrbit(_))
        ));
        assert!(matches!(
            classify_monodromy(&mat(2, 1, 1, 1)),
            Err(Error::AsymmetricMatrix { .. })
        ));
    }

    #[test]
    fn rotation_angles() {
        // R(2π/4) = (0 −1; 1 0)
        let quarter = mat(0, -1, 1, 0);
        assert_eq!(classify_monodromy(&quarter).unwrap(), (OrbitClass::Elliptic, Some(r(1, 4))));
        assert_eq!(
            classify_monodromy(&quarter.inverse()).unwrap(),
            (OrbitClass::Elliptic, Some(r(3, 4)))
        );
        // cos = 1/2, sin > 0: one sixth of a turn.
        let sixth = Sp2Matrix::new(r(1, 2), r(-3, 2), r(1, 2), r(1, 2)).unwrap();
        assert_eq!(classify_monodromy(&sixth).unwrap().1, Some(r(1, 6)));
        let third = Sp2Matrix::new(r(-1, 2), r(-3, 2), r(1, 2), r(-1, 2)).unwrap();
        assert_eq!(classify_monodromy(&third).unwrap().1, Some(r(1, 3)));
        let irrational = Sp2Matrix::new(r(1, 3), r(-8, 9), r(1, 1), r(1, 3)).unwrap();
        assert_eq!(classify_monodromy(&irrational).unwrap(), (OrbitClass::Elliptic, None));
    }

    #[test]
    fn classify_half_period_examples() {
        assert_eq!(classify_half_period(&mat(1, 1, 1, 2)).unwrap(), OrbitClass::PosHypTwo);
        let elliptic = Sp2Matrix::new(r(1, 1), r(-1, 1), r(1, 2), r(1, 2)).unwrap();
        assert_eq!(classify_half_period(&elliptic).unwrap(), OrbitClass::Elliptic);
        assert!(matches!(
            classify_half_period(&mat(1, 0, 1, 1)),
            Err(Error::DegenerateOrbit(_))
        ));
        assert_eq!(classify_half_period(&mat(1, -1, -1, 2)).unwrap(), OrbitClass::PosHypOne);
    }

    #[test]
    fn canonical_form_examples() {
        let (form, point) = canonical_form(&mat(3, 4, 2, 3)).unwrap();
        assert_eq!(point, QuotientPoint::PosSpike { y_squared: r(8, 1), y_positive: true });
        assert_eq!(form.upper, SignedSqrt { sign: 1, square: r(8, 1) });
        let (_, point) = canonical_form(&mat(3, -4, -2, 3)).unwrap();
        assert_eq!(point, QuotientPoint::PosSpike { y_squared: r(8, 1), y_positive: false });
        let (_, point) = canonical_form(&mat(-3, 4, 2, -3)).unwrap();
        assert_eq!(point, QuotientPoint::NegSpike { y_squared: r(8, 1), y_positive: true });
        let (form, point) = canonical_form(&mat(0, -1, 1, 0)).unwrap();
        assert_eq!(
            point,
            QuotientPoint::Circle { cos: r(0, 1), sin_positive: true, turns: Some(r(1, 4)) }
        );
        assert_eq!(form.lower, SignedSqrt { sign: 1, square: r(1, 1) });
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..=60, 1i64..=30).prop_map(|(n, d)| Rational::new(n, d))
    }

    /// Random symplectic half-period matrix with `vw ∉ {0, −1}`.
    fn half_period() -> impl Strategy<Value = Sp2Matrix> {
        (small_rational(), small_rational(), small_rational(), any::<bool>()).prop_filter_map(
            "nondegenerate",
            |(p, q, s, solve_for_x)| {
                // Fix three entries, solve u x − v w = 1 for the fourth.
                let one = Rational::one();
                let (u, v, w) = (p, q, s);
                let vw = v * w;
                if vw.is_zero() || vw == -one {
                    return None;
                }
                if solve_for_x {
                    if u.is_zero() {
                        return None;
                    }
                    Sp2Matrix::new(u, v, w, (one + vw) / u).ok()
                } else {
                    let x = u;
                    if x.is_zero() {
                        return None;
                    }
                    Sp2Matrix::new((one + vw) / x, v, w, x).ok()
                }
            },
        )
    }

    proptest! {
        #[test]
        fn half_period_routes_agree(h in half_period()) {
            let direct = classify_half_period(&h).unwrap();
            let (via_monodromy, _) = classify_monodromy(&monodromy_from_half_period(&h)).unwrap();
            prop_assert_eq!(direct, via_monodromy);
            prop_assert_eq!(classify_half_period(&h.neg()).unwrap(), direct);
        }

        #[test]
        fn inverse_swaps_types(h in half_period()) {
            let m = monodromy_from_half_period(&h);
            let (c, _) = classify_monodromy(&m).unwrap();
            let (ci, _) = classify_monodromy(&m.inverse()).unwrap();
            prop_assert_eq!(ci, c.reversed());
        }

        #[test]
        fn canonical_form_ignores_diagonal_conjugation(h in half_period(), n in 1i64..12, d in 1i64..12) {
            let m = monodromy_from_half_period(&h);
            let eps = Rational::new(n, d);
            prop_assert_eq!(canonical_form(&m).unwrap(), canonical_form(&m.conjugate_diagonal(eps)).unwrap());
        }
    }
}
