use thiserror::Error;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cone is not pointed (not a normal-domain cone)")]
    NotPointed,

    #[error("semigroup is not normal")]
    NotNormal,

    #[error("vectors are not linearly independent")]
    NotIndependent,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("divisor is not effective: {0:?}")]
    NonEffectiveDivisor(Vec<String>),

    #[error("class has infinite order; criterion inapplicable")]
    InfiniteOrder,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u64 },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
