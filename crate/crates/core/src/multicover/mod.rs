//! Multiple covers and holomorphic buildings.
//!
//! [`mu1_bounds`] and [`mu_cz_relation`] are the per-iterate estimates the
//! cover inequality is assembled from. [`cover`] holds the branched-cover
//! bookkeeping and [`building`] the multi-level statements.

pub mod building;
pub mod cover;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::HalfInt;
use crate::orbits::{OrbitClass, OrbitSpec};

pub use building::{
    bad_breaking_excluded, building_index, is_dynamically_convex, plane_building_check,
    BadBreakingTrace, Building, PlaneBuildingReport,
};
pub use cover::{
    cover_bound, check_cover, exceptional_counts, lemma_a_bounds, CoverAssignment, CoverCheck,
    CoverEnd, CoverKind, EndCovers, LemmaBound, LemmaKind,
};

/// `kμ1(β) − (k−1)/2 ≤ μ1(β^k) ≤ kμ1(β) + (k−1)/2`, evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mu1Bounds {
    pub lower: HalfInt,
    pub upper: HalfInt,
    pub value: HalfInt,
}

impl Mu1Bounds {
    pub fn holds(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }
}

pub fn mu1_bounds(spec: &OrbitSpec, k: u32) -> Result<Mu1Bounds> {
    let value = spec.mu1(k)?;
    let centre = spec.mu1(1)? * i64::from(k);
    let slack = HalfInt::from_twice(i64::from(k) - 1);
    Ok(Mu1Bounds {
        lower: centre - slack,
        upper: centre + slack,
        value,
    })
}

/// What `μ_CZ(β^k) − 2kμ1(β)` must be for a given class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum ResidualRule {
    Exact { value: i64 },
    Range { min: i64, max: i64 },
}

impl ResidualRule {
    pub fn admits(&self, r: i64) -> bool {
        match *self {
            ResidualRule::Exact { value } => r == value,
            ResidualRule::Range { min, max } => (min..=max).contains(&r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CzRelation {
    pub residual: i64,
    pub rule: ResidualRule,
}

impl CzRelation {
    pub fn holds(&self) -> bool {
        self.rule.admits(self.residual)
    }
}

/// The residual `μ_CZ(β^k) − 2kμ1(β)` and the rule it obeys.
pub fn mu_cz_relation(spec: &OrbitSpec, k: u32) -> Result<CzRelation> {
    let ki = i64::from(k);
    let residual = spec.mu_cz(k)? - spec.mu1(1)?.twice() * ki;
    let rule = match spec.class() {
        OrbitClass::NegHypOne | OrbitClass::NegHypTwo => ResidualRule::Exact { value: 0 },
        OrbitClass::PosHypOne => ResidualRule::Exact { value: -ki },
        OrbitClass::PosHypTwo => ResidualRule::Exact { value: ki },
        OrbitClass::Elliptic => ResidualRule::Range {
            min: 1 - ki,
            max: ki - 1,
        },
    };
    Ok(CzRelation { residual, rule })
}
