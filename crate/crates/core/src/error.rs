//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group closure exceeded bound {0}")]
    BoundExceeded(usize),
    #[error("invariant dimension {0} is not a nonnegative integer")]
    NonIntegralDimension(String),
    #[error("invalid singularity: {0}")]
    InvalidSingularity(String),
    #[error("fixed point is not isolated: exponents ({p}, {q}) mod {n}")]
    NotIsolated { n: i64, p: i64, q: i64 },
    #[error("non-integral genus {0}")]
    NonIntegralGenus(String),
    #[error("non-integral Euler number {0}")]
    NonIntegralEuler(String),
    #[error("non-integral invariant {name} = {value}")]
    NonIntegralInvariant { name: String, value: String },
    #[error("missing intersection data: {0}")]
    MissingIntersection(String),
    #[error("{0} is not a (-1)-curve")]
    NotMinusOneCurve(String),
    #[error("adjunction violated for {0}")]
    AdjunctionViolation(String),
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("no solution")]
    NoSolution,
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("matrix mismatch: {0}")]
    MatrixMismatch(String),
    #[error("no rationality certificate")]
    NoCertificate,
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
