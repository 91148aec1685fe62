use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not p-integral for p = {1}")]
    NotPIntegral(String, u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("denominator {0} exceeds the supported bound {1}")]
    DenominatorTooLarge(String, u64),

    #[error("{h} is not coprime to the denominator bound {bound}")]
    NotCoprime { h: u64, bound: String },

    #[error("value {0} lies outside the required interval {1}")]
    OutOfBox(String, &'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid classical specification: {0}")]
    InvalidClassical(String),

    #[error("offset is not in L_v: {0}")]
    NotInLv(String),

    #[error("point {0} lies outside the cone")]
    OutsideCone(String),

    #[error("the cone generated by the configuration is zero-dimensional")]
    ZeroDimensionalCone,

    #[error("configuration is confluent (no linear form takes the value 1 on every column)")]
    Confluent,

    #[error("enumeration guard of {0} points exceeded")]
    ResourceGuard(usize),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("truncation order too small: {0}")]
    TruncationTooSmall(String),

    #[error("power series prefix too short: {0}")]
    PrefixTooShort(String),

    #[error("annihilator does not vanish on the prefix: {0}")]
    NotAnnihilating(String),

    #[error("tail recursion mismatch at index {0}")]
    RecursionMismatch(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by an exhausted search budget rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceGuard(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
