use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the command-line exit codes: `Input`/`Parse`/`RingMismatch`
/// are user errors, `Limit` is a resource cap, and `Consistency` means two
/// independent computations disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("resource limit exceeded: {0}")]
    Limit(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Limit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
