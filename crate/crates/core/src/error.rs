use thiserror::Error;

/// Failures reported by the library.
///
/// The variants separate malformed input, violated preconditions of an
/// operation, and internal property checks that should never fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated [{hypothesis}]: {detail}")]
    Precondition { hypothesis: String, detail: String },
    #[error("internal property violated [{property}]: {detail}")]
    PropertyViolation { property: String, detail: String },
}

impl Error {
    pub(crate) fn precondition(hypothesis: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precondition { hypothesis: hypothesis.into(), detail: detail.into() }
    }

    pub(crate) fn property(property: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::PropertyViolation { property: property.into(), detail: detail.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
