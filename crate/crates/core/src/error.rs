use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input that does not follow the word / sequence / rational grammar.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// A precondition on the arguments was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The word is not central (or not of the required shape).
    #[error("not central: {0}")]
    NotCentral(String),

    /// A brute-force search found nothing inside its bounds.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// An internal cross-check failed. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
