use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("ambient dimension m = {0} is outside 1..=16")]
    InvalidDimension(usize),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("simplicial complex needs at least one maximal face")]
    EmptyComplex,

    #[error("defining set of {0} is empty")]
    DegenerateDefiningSet(String),

    #[error("m = {m} exceeds the exhaustive-enumeration cap of {cap}")]
    TooLarge { m: usize, cap: usize },

    #[error("dimension k = {k} exceeds the cap of {cap} for {what}")]
    DimensionTooLarge { k: usize, cap: usize, what: &'static str },

    #[error("distribution has the wrong basis: expected {expected}")]
    WrongBasis { expected: &'static str },

    #[error("frequency {frequency} at weight {weight} is not divisible by kernel size {kernel}")]
    IndivisibleFrequency { weight: u64, frequency: u64, kernel: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("cannot parse enumerator: {0}")]
    EnumeratorParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
