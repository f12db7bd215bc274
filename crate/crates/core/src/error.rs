use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of the called operation does not hold.
    #[error("usage error: {0}")]
    Usage(String),
    /// The requested object does not exist for this input.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("letter {letter:?} at position {position} is not in alphabet {alphabet:?}")]
    InvalidLetter {
        letter: char,
        position: usize,
        alphabet: String,
    },
    #[error("words over different alphabets ({left:?} vs {right:?}) cannot be compared")]
    AlphabetMismatch { left: String, right: String },
    #[error("invalid source description {input:?}: {reason}")]
    Source { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
