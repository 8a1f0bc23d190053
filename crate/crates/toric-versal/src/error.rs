use thiserror::Error;

/// Failure classes, mirrored by the CLI exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("input error: {0}")]
    Input(String),
    /// A mathematical hypothesis of a construction fails for the given data.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// An internal consistency check failed.
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Hypothesis(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
