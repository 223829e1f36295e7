use thiserror::Error;

/// Errors raised by the counting and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input (word specs, position lists, fractions).
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// A parameter is outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The computation would exceed a configured size limit.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }

    pub(crate) fn resource(message: impl Into<String>) -> Self {
        Error::ResourceLimit(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
