use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated the mathematical precondition of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The construction degenerated (non-squarefree curve, line inside a curve, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A bounded computation exceeded its budget; partial state is discarded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Malformed request document. The first field names the offending path.
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("i/o error at `{path}`: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
