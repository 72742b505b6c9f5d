use std::fmt;

use ncrank_core::AlgebraError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// An error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn exit_code(e: &AlgebraError) -> u8 {
    use AlgebraError::*;
    match e {
        InvalidWitness(_) | Internal(_) => EXIT_VERIFY,
        InvalidInput(_) | DimensionMismatch(_) | DivisionByZero | UnsupportedOperation(_) => EXIT_INPUT,
        FieldTooSmall { .. } | InstanceTooLarge(_) | CapExceeded { .. } | UnsupportedCharacteristic { .. } => {
            EXIT_RESOURCE
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}
