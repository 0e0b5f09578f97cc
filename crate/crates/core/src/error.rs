use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("form is degenerate (discriminant 0)")]
    Degenerate,

    #[error("form is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("level {0} is not of the form 4N with N odd squarefree")]
    UnsupportedLevel(i64),

    #[error("prime {p} does not divide level {level}")]
    PrimeDoesNotDivideLevel { p: i64, level: i64 },

    #[error("discriminant {d} does not have the shape required for level {level}")]
    UnsupportedDiscriminant { level: i64, d: i64 },

    #[error("unknown genus {0}")]
    UnknownGenus(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("order invariant violated: {0}")]
    OrderInvariant(String),

    #[error("sublattice for m = {0} does not give an integral form")]
    NonIntegralWatson(i64),

    #[error("n_max = {n_max} too small to certify rank: found {rank}, expected {expected}")]
    InsufficientPrecision {
        n_max: usize,
        rank: usize,
        expected: usize,
    },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
