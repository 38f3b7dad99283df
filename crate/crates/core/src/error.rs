use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// A numeric input fell outside the region where the error models apply.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// The requested target cannot be met by any protocol in the searched space.
    #[error("not reachable within bounds: {0}")]
    Unreachable(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Short machine-readable tag, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Budget(_) => "budget",
            Error::Unreachable(_) => "unreachable",
            Error::Parse { .. } => "parse",
            Error::Unsupported(_) => "unsupported",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
