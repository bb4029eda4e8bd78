use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("n ≥ {min} required (got n = {got})")]
    SizeTooSmall { min: usize, got: usize },

    #[error("signature parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),

    #[error("partition parts must be nonnegative: {0:?}")]
    NegativePart(Vec<i64>),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("partition has {rows} rows but only {n_vars} variables are available")]
    TooManyRows { rows: usize, n_vars: usize },

    #[error("class parameter {0} is the identity class; a non-identity element is required")]
    IdentityClass(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("a = {0} lies outside (0, 1)")]
    AOutOfRange(f64),

    #[error("negative radicand {0} in the second error term")]
    NegativeRadicand(f64),

    #[error("invalid decomposition table: {0}")]
    InvalidTable(String),

    #[error("missing multiplicity table for r = {0}")]
    MissingMultiplicityTable(usize),

    #[error("component {0} not present in the table")]
    UnknownComponent(String),

    #[error("operation not supported for family {0}")]
    UnsupportedFamily(String),

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("numerical check failed: {0}")]
    NonConvergence(String),

    #[error("ill-conditioned system (condition number {0:.3e})")]
    IllConditioned(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
