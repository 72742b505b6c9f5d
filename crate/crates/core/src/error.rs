use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {characteristic} divides {degree}")]
    UnsupportedCharacteristic { characteristic: u64, degree: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported operation: {0}")]
    UnsupportedOperation(&'static str),

    #[error("field too small: need at least {required} elements")]
    FieldTooSmall { required: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("blow-up size {rows} exceeds cap {cap}; best certified ncrk lower bound is {best_rank}")]
    CapExceeded {
        rows: usize,
        cap: usize,
        best_rank: usize,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
