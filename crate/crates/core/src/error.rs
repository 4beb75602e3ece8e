use thiserror::Error;

/// Errors raised by constructors and structure operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value {value} is outside the chain 0..{n}")]
    OutOfRange { value: usize, n: usize },
    #[error("values decrease at position {index}")]
    NotMonotone { index: usize },
    #[error("chain sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("chain size {0} is not supported (1..={max})", max = crate::chain::MAX_CHAIN)]
    UnsupportedChain(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("run multiplicities sum to {found}, expected {expected}")]
    SumMismatch { expected: usize, found: usize },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("invalid structure: {0}")]
    InvalidSpec(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("{0} is not a sum of string elements")]
    NotDecomposable(String),
    #[error("not a basic layer: {0}")]
    NotBasic(String),
    #[error("ideal candidate is not a subset of the ambient set")]
    NotSubset,
    #[error("set is not closed: {0}")]
    NotClosed(String),
    #[error("formula {id} is undefined for {params}")]
    Domain { id: String, params: String },
    #[error("size n={n} exceeds the {mode} limit of {limit}")]
    UnsupportedSize {
        n: usize,
        mode: &'static str,
        limit: usize,
    },
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
