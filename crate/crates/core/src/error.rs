use thiserror::Error;

/// Errors produced by the arithmetic and experiment layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("precision must be at least 1")]
    ZeroPrecision,

    #[error("{p}^{precision} does not fit in 64 bits")]
    ModulusOverflow { p: u64, precision: u32 },

    #[error("operands live in different rings (Z/{left_p}^{left_n} vs Z/{right_p}^{right_n})")]
    RingMismatch {
        left_p: u64,
        left_n: u32,
        right_p: u64,
        right_n: u32,
    },

    #[error("operands live at different levels ({0} vs {1})")]
    LevelMismatch(u32, u32),

    #[error("operands have different truncation degrees ({0} vs {1})")]
    TruncationMismatch(usize, usize),

    #[error("{0} is not a unit modulo p")]
    NonUnit(u64),

    #[error("a_p = {0} is not a p-adic unit (non-ordinary)")]
    NonOrdinary(u64),

    #[error("a_p = {0} is a p-adic unit (ordinary)")]
    Ordinary(u64),

    #[error("truncation degree {trunc} is too small, need at least {needed}")]
    TruncationTooSmall { trunc: usize, needed: usize },

    #[error("level {0} is out of range")]
    InvalidLevel(u32),

    #[error("element vanishes modulo p^N")]
    ZeroAtPrecision,

    #[error("lambda-invariant is not certified below truncation degree {0}")]
    LambdaExceedsTruncation(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed element encoding: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
