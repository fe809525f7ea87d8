use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid exponent vector {exponents:?} for degree {degree} in {vars} variables")]
    InvalidExponent {
        exponents: Vec<usize>,
        vars: usize,
        degree: usize,
    },

    #[error("monomial index {index} out of range (only {count} monomials)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("polynomial structure mismatch: {0}")]
    Structure(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error(
        "no generic configuration found after {attempts} attempts (d={d}, n={n}, bound={bound})"
    )]
    GenericityFailure {
        d: usize,
        n: usize,
        bound: u64,
        attempts: usize,
    },

    #[error("invalid plane: {0}")]
    InvalidPlane(String),

    #[error("point {index} lies on the plane; the cone sample is degenerate")]
    DegenerateSample { index: usize },

    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },

    #[error("matrix of size {size} exceeds the {method} limit of {limit}")]
    Size {
        method: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported ambient dimension n={0}; only n=2 is supported here")]
    UnsupportedDimension(usize),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
