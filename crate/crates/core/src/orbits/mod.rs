//! Brake orbits: classification of Sp(2) monodromies and the iteration
//! formulae for `μ1`, `μ2` and `μ_CZ`.

mod monodromy;
mod spec;

pub use monodromy::{
    canonical_form, classify_half_period, classify_monodromy, monodromy_from_half_period,
    CanonicalForm, QuotientPoint, SignedSqrt, Sp2Matrix,
};
pub use spec::{HalfPeriodIndices, OrbitClass, OrbitSpec, Seed};

/// Validated constructor; see [`OrbitSpec::new`].
pub fn make_orbit(class: OrbitClass, seed: Seed) -> crate::error::Result<OrbitSpec> {
    OrbitSpec::new(class, seed)
}
