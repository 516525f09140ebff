use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("scalar mode mismatch: expected {expected}, found {found}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("family construction routes disagree: {0}")]
    InconsistentConstruction(String),

    #[error("operation not supported for {0}")]
    Unsupported(String),

    #[error("recurrence coefficient lambda_{index} = {value} is not positive")]
    NonPositiveLambda { index: usize, value: f64 },

    #[error("eigensolver did not converge for degree {0}")]
    NoConvergence(usize),

    #[error("polynomial of degree {degree} has a non-real zero {re} + {im}i")]
    ComplexZero { degree: usize, re: f64, im: f64 },

    #[error("computed zeros are not strictly increasing at index {0}")]
    NotStrictlyIncreasing(usize),

    #[error("zero set size mismatch: {0}")]
    SizeMismatch(String),

    #[error("added point {e} lies within {floor:e} of a zero of the comparison polynomial (index {index})")]
    CoincidentPoint { e: f64, index: usize, floor: f64 },

    #[error("mixed relation does not hold identically: {0}")]
    IdentityFailure(String),

    #[error("relation shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("oracle generator exhausted {0} retries")]
    OracleExhausted(usize),

    #[error("malformed input: {0}")]
    Malformed(String),
}
