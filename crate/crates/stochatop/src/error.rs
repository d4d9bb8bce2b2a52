use thiserror::Error;

/// Errors shared across the crate.
///
/// `InvalidInput` covers precondition violations (bad vertex labels, mismatched
/// fields, out-of-range parameters). `Parse` carries the 1-based line number of
/// the offending line in a complex file. `ResourceLimit` is returned when an
/// operation would enumerate more faces or store more simplices than the
/// configured bound allows.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
