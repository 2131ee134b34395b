use thiserror::Error;

/// Errors raised by the library. Indices reported to users are 1-based,
/// matching the sequence notation `x_1, x_2, ...`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight list is empty")]
    EmptyWeights,
    #[error("weight {0} is not strictly positive")]
    NonPositiveWeight(usize),
    #[error("weights sum to {0}, expected 1")]
    SumMismatch(f64),
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("norm does not accept this input: {0}")]
    Unsupported(&'static str),
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error(
        "block rows do not have full column rank ({rank} < {dim}); the norm would be a seminorm"
    )]
    RankDeficientNorm { rank: usize, dim: usize },
    #[error("generator count {count} exceeds limit {limit}")]
    GeneratorBlowup { count: u128, limit: usize },
    #[error("linear program failed: {0}")]
    Lp(#[from] crate::lp::LpError),
    #[error("problem too large for brute force: {0}")]
    TooLarge(String),
    #[error("no convergence: gap {gap:e} after {iterations} iterations")]
    NonConvergence { gap: f64, iterations: usize },
    #[error("search limit exceeded at N = {0}")]
    SearchLimitExceeded(usize),
    #[error("invalid refutation candidate: {0}")]
    InvalidCandidate(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not upper triangular (entry ({row}, {col}))")]
    NotTriangular { row: usize, col: usize },
    #[error("angle grid of {0} points is too coarse (need at least 8)")]
    InvalidGrid(usize),
    #[error("matrix is not square: {0}")]
    NotSquare(String),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
