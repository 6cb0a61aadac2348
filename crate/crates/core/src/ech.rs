//! Real ECH index, partition conditions, and the writhe and linking bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ceil, gcd, HalfInt, Rational};
use crate::fredholm::End;
use crate::orbits::{OrbitClass, OrbitSpec};

/// A multiset of positive integers, kept sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidMultiplicity);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// All partitions of `n`, largest parts first, in descending
/// lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=rest.min(cap)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// A Real generator: distinct orbits with total multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<End>", into = "Vec<End>")]
pub struct RealGenerator {
    entries: Vec<End>,
}

impl RealGenerator {
    pub fn new(entries: Vec<End>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.mult == 0 {
                return Err(Error::InvalidMultiplicity);
            }
            if entries[..i].iter().any(|o| o.orbit == e.orbit) {
                return Err(Error::DuplicateOrbit(e.orbit.to_string()));
            }
        }
        Ok(RealGenerator { entries })
    }

    pub fn entries(&self) -> &[End] {
        &self.entries
    }

    /// `Σ_i Σ_{k ≤ m_i} μ1(α_i^k)`.
    fn mu1_sum(&self) -> Result<HalfInt> {
        let mut total = HalfInt::ZERO;
        for e in &self.entries {
            for k in 1..=e.mult {
                total += e.orbit.mu1(k)?;
            }
        }
        Ok(total)
    }
}

impl TryFrom<Vec<End>> for RealGenerator {
    type Error = Error;
    fn try_from(v: Vec<End>) -> Result<Self> {
        RealGenerator::new(v)
    }
}

impl From<RealGenerator> for Vec<End> {
    fn from(g: RealGenerator) -> Vec<End> {
        g.entries
    }
}

/// Relative homology data entering the Real ECH index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeClassData {
    pub c1: i64,
    #[serde(rename = "Q")]
    pub q: i64,
}

/// `I_RECH(α, β; Z) = ½c1 + ½Q + ΣΣ μ1(α_i^k) − ΣΣ μ1(β_j^k)`.
pub fn i_rech(alpha: &RealGenerator, beta: &RealGenerator, z: RelativeClassData) -> Result<HalfInt> {
    Ok(HalfInt::from_twice(z.c1 + z.q) + alpha.mu1_sum()? - beta.mu1_sum()?)
}

/// `ρ = μ1(β^q) + ½`, an integer.
pub fn rho(spec: &OrbitSpec, q: u32) -> Result<HalfInt> {
    Ok(spec.mu1(q)? + HalfInt::HALF)
}

fn rho_int(spec: &OrbitSpec, q: u32) -> Result<i64> {
    Ok(rho(spec, q)?.to_integer().expect("mu1 is a strict half-integer"))
}

/// Left side of the partition inequality:
/// `Σ(μ1(β^{q_i}) − ½ρ_i) + ½ Σ_{i,j} min(q_iρ_j, q_jρ_i)`, the double sum
/// running over all ordered pairs including `i = j`.
pub fn rech_left(spec: &OrbitSpec, p: &Partition) -> Result<HalfInt> {
    let q: Vec<i64> = p.parts.iter().map(|&x| i64::from(x)).collect();
    let rhos: Vec<i64> = p.parts.iter().map(|&x| rho_int(spec, x)).collect::<Result<_>>()?;
    let mut total = HalfInt::ZERO;
    for (&qi, &ri) in p.parts.iter().zip(&rhos) {
        total += spec.mu1(qi)? - HalfInt::from_twice(ri);
    }
    let mut twice_sum = 0i64;
    for i in 0..q.len() {
        for j in 0..q.len() {
            twice_sum += (q[i] * rhos[j]).min(q[j] * rhos[i]);
        }
    }
    Ok(total + HalfInt::from_twice(twice_sum))
}

/// Right side of the partition inequality, `Σ_{i=1}^n μ1(β^i)`.
pub fn rech_right(spec: &OrbitSpec, n: u32) -> Result<HalfInt> {
    (1..=n).map(|i| spec.mu1(i)).sum()
}

/// The partition of `n` that negative ends at `spec` must satisfy when
/// the index inequality is an equality.
///
/// Hyperbolic orbits follow a fixed table. For elliptic orbits the
/// partition is the unique minimizer of [`rech_left`]; ties are reported
/// as [`Error::NonUniqueMinimizer`].
pub fn negative_partition(spec: &OrbitSpec, n: u32) -> Result<Partition> {
    if n == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let parts = match spec.class() {
        OrbitClass::PosHypTwo => vec![1; n as usize],
        OrbitClass::PosHypOne => vec![n],
        OrbitClass::NegHypTwo => {
            let mut v = vec![2; (n / 2) as usize];
            if n % 2 == 1 {
                v.push(1);
            }
            v
        }
        OrbitClass::NegHypOne if n % 2 == 1 => vec![n],
        OrbitClass::NegHypOne => vec![n - 1, 1],
        OrbitClass::Elliptic => return elliptic_minimizer(spec, n),
    };
    Partition::new(parts)
}

fn elliptic_minimizer(spec: &OrbitSpec, n: u32) -> Result<Partition> {
    for k in 1..=n {
        spec.mu1(k)?;
    }
    let mut best: Option<HalfInt> = None;
    let mut argmin = Vec::new();
    for p in partitions(n) {
        let value = rech_left(spec, &p)?;
        match best {
            Some(b) if value > b => {}
            Some(b) if value == b => argmin.push(p),
            _ => {
                best = Some(value);
                argmin = vec![p];
            }
        }
    }
    if argmin.len() > 1 {
        let listed: Vec<String> = argmin.iter().map(Partition::to_string).collect();
        return Err(Error::NonUniqueMinimizer {
            n,
            partitions: listed.join(" "),
        });
    }
    Ok(argmin.pop().expect("n >= 1 has a partition"))
}

/// Partition for positive ends: the negative partition of the reversed
/// orbit.
pub fn positive_partition(spec: &OrbitSpec, n: u32) -> Result<Partition> {
    negative_partition(&spec.reverse(), n)
}

/// The lattice-path partition of an elliptic orbit with rotation `theta`:
/// horizontal displacements of the lowest convex lattice path from `(0,0)`
/// to `(n, ⌈nθ⌉)` staying above the line `y = θx`.
pub fn lattice_path_partition(theta: Rational, n: u32) -> Result<Partition> {
    if n == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let points: Vec<(i64, i64)> = (0..=i64::from(n))
        .map(|x| (x, if x == 0 { 0 } else { ceil(theta * Rational::from_integer(x)) }))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut parts = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let g = gcd(dx, dy);
        parts.extend(std::iter::repeat_n((dx / g) as u32, g as usize));
    }
    Partition::new(parts)
}

/// Lower bound `(n − 1)ρ(β^n)` on the writhe of a braid with `n` strands
/// around `β`, and whether the lemma allows it to be attained.
pub fn writhe_lower_bound(spec: &OrbitSpec, n: u32) -> Result<(HalfInt, bool)> {
    let r = rho(spec, n)?;
    let possible = match spec.class() {
        OrbitClass::PosHypOne => true,
        OrbitClass::PosHypTwo => n == 1,
        OrbitClass::NegHypOne => n % 2 == 1 || n.is_multiple_of(4),
        OrbitClass::NegHypTwo => n % 2 == 1 || n == 2,
        OrbitClass::Elliptic => gcd(i64::from(n), rho_int(spec, n)?) == 1,
    };
    Ok((r * (i64::from(n) - 1), possible))
}

/// `min(q1·ρ(ξ2), q2·ρ(ξ1))` for braids `ξ1 = spec1^{q1}`, `ξ2 = spec2^{q2}`.
pub fn linking_lower_bound(spec1: &OrbitSpec, q1: u32, spec2: &OrbitSpec, q2: u32) -> Result<HalfInt> {
    let a = rho(spec2, q2)? * i64::from(q1);
    let b = rho(spec1, q1)? * i64::from(q2);
    Ok(a.min(b))
}

/// Outcome of checking the partition inequality over every partition of
/// `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RechReport {
    pub n: u32,
    pub min: HalfInt,
    pub right: HalfInt,
    pub equality_partitions: Vec<Partition>,
    pub checked: u64,
}

impl RechReport {
    /// The inequality holds everywhere and equality is attained exactly at
    /// `expected`.
    pub fn confirms(&self, expected: &Partition) -> bool {
        self.min == self.right
            && self.equality_partitions.len() == 1
            && &self.equality_partitions[0] == expected
    }
}

/// Evaluates [`rech_left`] on every partition of `n`.
pub fn verify_rech(spec: &OrbitSpec, n: u32) -> Result<RechReport> {
    let right = rech_right(spec, n)?;
    let mut min: Option<HalfInt> = None;
    let mut equality_partitions = Vec::new();
    let mut checked = 0;
    for p in partitions(n) {
        let left = rech_left(spec, &p)?;
        checked += 1;
        min = Some(min.map_or(left, |m| m.min(left)));
        if left == right {
            equality_partitions.push(p);
        }
    }
    Ok(RechReport {
        n,
        min: min.expect("n >= 1 has a partition"),
        right,
        equality_partitions,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyp(class: OrbitClass, twice: i64) -> OrbitSpec {
        OrbitSpec::hyperbolic(class, HalfInt::from_twice(twice)).unwrap()
    }

    fn ell(p: i64, q: i64) -> OrbitSpec {
        OrbitSpec::elliptic(Rational::new(p, q)).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn partitions_listing() {
        assert_eq!(partitions(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(partitions(10).len(), 42);
        assert!(partitions(0).is_empty());
    }

    #[test]
    fn partition_json_is_descending() {
        let p: Partition = serde_json::from_str("[1,5]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[5,1]");
        assert!(serde_json::from_str::<Partition>("[0,1]").is_err());
    }

    #[test]
    fn i_rech_examples() {
        let a = RealGenerator::new(vec![End::new(hyp(OrbitClass::NegHypOne, 3), 1)]).unwrap();
        let none = RealGenerator::default();
        let z = RelativeClassData::default();
        assert_eq!(i_rech(&a, &none, z).unwrap(), h(3));
        assert_eq!(i_rech(&a, &a, z).unwrap(), HalfInt::ZERO);
        let e = RealGenerator::new(vec![End::new(ell(5, 17), 2)]).unwrap();
        assert_eq!(i_rech(&e, &none, RelativeClassData { c1: 0, q: 2 }).unwrap(), h(4));
        let o = hyp(OrbitClass::NegHypOne, 1);
        assert!(matches!(
            RealGenerator::new(vec![End::new(o, 1), End::new(o, 2)]),
            Err(Error::DuplicateOrbit(_))
        ));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&hyp(OrbitClass::NegHypOne, 1), 2).unwrap(), h(4));
        assert_eq!(rho(&hyp(OrbitClass::PosHypOne, 1), 7).unwrap(), h(2));
        assert_eq!(rho(&ell(5, 17), 3).unwrap(), h(2));
    }

    #[test]
    fn rech_sides() {
        let e = ell(1, 100);
        assert_eq!(rech_left(&e, &part(&[3])).unwrap(), h(3));
        assert_eq!(rech_left(&e, &part(&[1, 1, 1])).unwrap(), h(9));
        for n in 1..8 {
            assert_eq!(rech_left(&hyp(OrbitClass::PosHypOne, 1), &part(&[n])).unwrap(), h(i64::from(n)));
        }
        assert_eq!(rech_right(&hyp(OrbitClass::NegHypOne, 1), 2).unwrap(), h(4));
        assert_eq!(rech_right(&hyp(OrbitClass::PosHypTwo, 1), 3).unwrap(), h(9));
        let s = hyp(OrbitClass::NegHypTwo, 5);
        assert_eq!(rech_right(&s, 1).unwrap(), s.mu1(1).unwrap());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(negative_partition(&hyp(OrbitClass::PosHypOne, 1), 5).unwrap(), part(&[5]));
        assert_eq!(negative_partition(&hyp(OrbitClass::NegHypOne, 1), 6).unwrap(), part(&[5, 1]));
        assert_eq!(negative_partition(&ell(1, 100), 3).unwrap(), part(&[3]));
        assert_eq!(positive_partition(&hyp(OrbitClass::PosHypOne, 1), 4).unwrap(), part(&[1, 1, 1, 1]));
        assert_eq!(positive_partition(&hyp(OrbitClass::NegHypTwo, 1), 5).unwrap(), part(&[5]));
        assert_eq!(positive_partition(&ell(5, 17), 1).unwrap(), part(&[1]));
        assert_eq!(negative_partition(&hyp(OrbitClass::NegHypTwo, 1), 5).unwrap(), part(&[2, 2, 1]));
    }

    #[test]
    fn lattice_path_agrees_with_minimizer() {
        for q in 2..=13i64 {
            for p in -q..2 * q {
                let theta = Rational::new(p, q);
                if theta.is_integer() {
                    continue;
                }
                let spec = OrbitSpec::elliptic(theta).unwrap();
                for n in 1..(*theta.denom()).min(11) as u32 {
                    assert_eq!(
                        lattice_path_partition(theta, n).unwrap(),
                        negative_partition(&spec, n).unwrap(),
                        "theta {theta}, n {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn writhe_examples() {
        let (b, f) = writhe_lower_bound(&hyp(OrbitClass::PosHypTwo, 1), 3).unwrap();
        assert_eq!((b, f), (h(12), false));
        let (b, f) = writhe_lower_bound(&hyp(OrbitClass::NegHypOne, 1), 4).unwrap();
        assert_eq!((b, f), (h(18), true));
        for s in [hyp(OrbitClass::PosHypTwo, 7), ell(5, 17), hyp(OrbitClass::NegHypTwo, -3)] {
            assert_eq!(writhe_lower_bound(&s, 1).unwrap(), (HalfInt::ZERO, true));
        }
    }

    #[test]
    fn writhe_flag_means_coprime_in_normal_form() {
        let normal = [
            hyp(OrbitClass::PosHypOne, 1),
            hyp(OrbitClass::PosHypTwo, -1),
            hyp(OrbitClass::NegHypOne, 1),
            hyp(OrbitClass::NegHypTwo, 1),
        ];
        for s in normal {
            for n in 1..=40 {
                let (_, flag) = writhe_lower_bound(&s, n).unwrap();
                let r = rho_int(&s, n).unwrap();
                assert_eq!(flag, gcd(i64::from(n), r) == 1, "{s} n={n}");
            }
        }
    }

    #[test]
    fn linking_examples() {
        let s = hyp(OrbitClass::NegHypOne, 1);
        assert_eq!(linking_lower_bound(&s, 1, &s, 1).unwrap(), h(2));
        let t = hyp(OrbitClass::PosHypOne, 1);
        assert_eq!(linking_lower_bound(&t, 2, &t, 3).unwrap(), h(4));
        let e = ell(5, 17);
        assert_eq!(linking_lower_bound(&e, 3, &s, 5).unwrap(), linking_lower_bound(&s, 5, &e, 3).unwrap());
    }

    #[test]
    fn verify_examples() {
        let r = verify_rech(&hyp(OrbitClass::NegHypTwo, 1), 4).unwrap();
        assert_eq!(r.equality_partitions, vec![part(&[2, 2])]);
        assert_eq!(r.checked, 5);
        let r = verify_rech(&hyp(OrbitClass::PosHypOne, 1), 3).unwrap();
        assert!(r.confirms(&part(&[3])));
        let r = verify_rech(&hyp(OrbitClass::NegHypOne, 1), 3).unwrap();
        assert!(r.confirms(&part(&[3])));
    }
}
