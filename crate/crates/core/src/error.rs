use thiserror::Error;

/// Errors raised by group construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text (cycle notation, `.grp` files, catalog names).
    #[error("{message}")]
    Parse { line: Option<usize>, message: String },

    /// Structurally invalid input, e.g. generators of different degrees.
    #[error("{0}")]
    InvalidInput(String),

    /// A configured cap was exceeded; the computation was abandoned.
    #[error("{what}: needed {needed}, cap {cap}")]
    Resource { what: String, needed: u64, cap: u64 },

    /// An internal consistency check failed. Indicates a bug, not bad input.
    #[error("internal: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: match line {
                Some(l) => format!("line {l}: {}", message.into()),
                None => message.into(),
            },
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }

    pub fn resource(what: impl Into<String>, needed: u64, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            cap,
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Error::Internal(message.into())
    }

    /// Short machine-readable kind, used for `error[kind]:` prefixes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidInput(_) => "input",
            Error::Resource { .. } => "resource",
            Error::Internal(_) => "internal",
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
