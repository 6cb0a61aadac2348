//! Exact index calculus for brake orbits in contact three-manifolds.
//!
//! [`orbits`] classifies monodromies and iterates the half-period indices.
//! [`fredholm`] turns ends into Real Fredholm indices, and [`ech`] and
//! [`multicover`] hold the inequalities built on top of them. All
//! arithmetic is exact. [`oracle`] enumerates bounded instances by brute
//! force and [`replay`] checks every inequality against it.

pub mod ech;
pub mod error;
pub mod exact;
pub mod fredholm;
pub mod multicover;
pub mod oracle;
pub mod orbits;
pub mod replay;

pub use error::{Error, Result};
pub use exact::{HalfInt, Rational};
pub use orbits::{OrbitClass, OrbitSpec, Seed};
