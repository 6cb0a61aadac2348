use thiserror::Error;

use crate::exact::Rational;

/// Errors raised by index computations and theorem replays.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),
    #[error("seed parity: hyperbolic mu1 must be a strict half-integer, got {0}")]
    ParityError(String),
    #[error("seed kind does not match orbit class {0}")]
    SeedMismatch(String),
    #[error("matrix is not symplectic (determinant {0})")]
    NotSymplectic(Rational),
    #[error("monodromy must have equal diagonal entries, got a = {a}, d = {d}")]
    AsymmetricMatrix { a: Rational, d: Rational },
    #[error("iterate {k} of elliptic orbit with theta = {theta} is degenerate")]
    DegenerateIterate { theta: Rational, k: u32 },
    #[error("unsupported orbit class for this operation: {0}")]
    UnsupportedClass(String),
    #[error("multiplicities must be positive")]
    InvalidMultiplicity,
    #[error("cover is unbalanced: positive total {positive} vs negative total {negative}")]
    BalanceViolation { positive: u64, negative: u64 },
    #[error("odd-multiplicity symmetric end counts differ in parity ({positive} vs {negative})")]
    ParityViolation { positive: usize, negative: usize },
    #[error("cover needs at least one positive and one negative symmetric end")]
    EmptyEnds,
    #[error("index is not an integer: {0}")]
    NonIntegralIndex(String),
    #[error("duplicate orbit in generator: {0}")]
    DuplicateOrbit(String),
    #[error("rech_left has several minimizers for n = {n}: {partitions}")]
    NonUniqueMinimizer { n: u32, partitions: String },
    #[error("cover multiplicities do not add up to the degree: {0}")]
    MultiplicityMismatch(String),
    #[error("Riemann-Hurwitz violated: {0}")]
    RiemannHurwitzViolation(String),
    #[error("building levels do not match: {0}")]
    EndMismatch(String),
    #[error("orbit is not dynamically convex: {0}")]
    NotDynamicallyConvex(String),
    #[error("malformed building: {0}")]
    MalformedBuilding(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
}

impl Error {
    /// Stable variant name, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::DegenerateOrbit(_) => "DegenerateOrbit",
            Error::ParityError(_) => "ParityError",
            Error::SeedMismatch(_) => "SeedMismatch",
            Error::NotSymplectic(_) => "NotSymplectic",
            Error::AsymmetricMatrix { .. } => "AsymmetricMatrix",
            Error::DegenerateIterate { .. } => "DegenerateIterate",
            Error::UnsupportedClass(_) => "UnsupportedClass",
            Error::InvalidMultiplicity => "InvalidMultiplicity",
            Error::BalanceViolation { .. } => "BalanceViolation",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::EmptyEnds => "EmptyEnds",
            Error::NonIntegralIndex(_) => "NonIntegralIndex",
            Error::DuplicateOrbit(_) => "DuplicateOrbit",
            Error::NonUniqueMinimizer { .. } => "NonUniqueMinimizer",
            Error::MultiplicityMismatch(_) => "MultiplicityMismatch",
            Error::RiemannHurwitzViolation(_) => "RiemannHurwitzViolation",
            Error::EndMismatch(_) => "EndMismatch",
            Error::NotDynamicallyConvex(_) => "NotDynamicallyConvex",
            Error::MalformedBuilding(_) => "MalformedBuilding",
            Error::HypothesisViolation(_) => "HypothesisViolation",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
