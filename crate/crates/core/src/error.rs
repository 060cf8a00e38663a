use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum GcubeError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    /// A numeric procedure could not establish its preconditions
    /// (for example an invalid bisection bracket).
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl GcubeError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GcubeError::Domain(msg.into())
    }
}

impl From<serde_json::Error> for GcubeError {
    fn from(err: serde_json::Error) -> Self {
        GcubeError::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GcubeError>;
