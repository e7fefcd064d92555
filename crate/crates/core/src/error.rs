use thiserror::Error;

/// Errors raised by the algebra, circuit and factorization layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Shapes do not line up: variable counts, arities, matrix dimensions.
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The dense oracle was asked to expand something beyond its degree cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("characteristic {prime} too small for degree {degree}")]
    UnsupportedCharacteristic { prime: u64, degree: usize },

    #[error("normalization failed after {attempts} attempts: {reason}")]
    NormalizationFailure { attempts: usize, reason: String },

    /// The lifted candidate does not multiply back to the input.
    #[error("not a true split: {0}")]
    NotATrueSplit(String),

    #[error("not a pure power: {0}")]
    NotAPurePower(String),

    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),

    /// Should be unreachable when preconditions hold.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
