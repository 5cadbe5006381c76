use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index or parameter fell outside its admissible range.
    #[error("out of range: {0}")]
    Range(String),
    /// The input is well formed but lies outside the operation's domain
    /// (for example an inadmissible sequence handed to a decomposition).
    #[error("domain error: {0}")]
    Domain(String),
    /// The caller violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A rewrite or iteration cap was exhausted. This indicates a bug.
    #[error("guard tripped: {0}")]
    Guard(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
