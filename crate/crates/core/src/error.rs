use thiserror::Error;

/// Errors raised by the field, linear algebra, complex and code layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),

    #[error("field order {p}^{e} exceeds the supported maximum of {max}")]
    FieldTooLarge { p: u64, e: u32, max: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("element code {code} is out of range for GF({q})")]
    ElementOutOfRange { code: u64, q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("enumeration of {required} items exceeds the cap of {cap}")]
    EnumerationCap { required: u128, cap: u64 },

    #[error("count overflows 128-bit arithmetic")]
    Overflow,

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("the complex has no generators")]
    EmptyGenerators,

    #[error("the defining set is empty")]
    EmptyDefiningSet,

    #[error("rank r = {r} is out of range 1..={k}")]
    RankOutOfRange { r: usize, k: usize },

    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
