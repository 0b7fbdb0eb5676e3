use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime in [3, 2^31)")]
    InvalidModulus(u32),

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("incomparable basis indices: {0}")]
    IncomparableIndex(String),

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("series denominator has zero constant term")]
    NonInvertibleSeries,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
