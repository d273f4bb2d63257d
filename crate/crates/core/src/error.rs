use thiserror::Error;

/// Errors raised by the library. Parse errors carry the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("enumeration limit exceeded: d = {d} > {limit}")]
    LimitExceeded { d: usize, limit: usize },

    #[error("invalid oriented diagram: {0}")]
    InvalidOrientation(String),

    #[error("matrix is not parity-homogeneous")]
    NonHomogeneous,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("entry denominator is divisible by the prime {0}")]
    DenominatorDivisibleByPrime(u64),

    #[error("parity mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("incompatible orientation sequences: {0}")]
    IncompatibleSequences(String),

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("operator does not commute with the {0} action")]
    NonEquivariant(String),

    #[error("coefficient read-off is ambiguous: {0}")]
    AmbiguousReadOff(String),
}

pub type Result<T> = std::result::Result<T, Error>;
