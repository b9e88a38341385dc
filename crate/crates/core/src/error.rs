use thiserror::Error;

/// Errors raised by the arithmetic, representation and global layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),

    #[error("modulus {p}^{k} exceeds the supported table size")]
    ModulusTooLarge { p: u64, k: u32 },

    #[error("characters live over different primes ({0} vs {1})")]
    DomainMismatch(u64, u64),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("level k = {0} is not supported here (need k >= 2)")]
    UnsupportedLevel(u32),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("value is only bounded, not determined (bound {bound}): {reason}")]
    AmbiguousBound { bound: u32, reason: String },

    #[error("level l = {l} outside 0..={n}")]
    LevelOutOfRange { l: u32, n: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("window error: {0}")]
    WindowError(String),

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("not an elliptic-curve configuration: {0}")]
    NotElliptic(String),

    #[error("matrix is not a scaling matrix for the cusp: {0}")]
    BadMatrix(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
