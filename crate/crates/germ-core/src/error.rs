//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unsupported germ class: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("series truncation insufficient at order {0}")]
    Truncation(u32),

    #[error("variable context mismatch: {0}")]
    VarMismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Unsupported(_) => 3,
            Error::Precondition(_) => 4,
            Error::IdentityFailure(_) => 5,
            Error::Truncation(_) | Error::VarMismatch(_) | Error::Internal(_) => 5,
        }
    }
}
