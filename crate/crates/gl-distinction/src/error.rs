use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("registry error: {0}")]
    Registry(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("parse error at position {pos}: {message} (expected {expected})")]
    Parse {
        pos: usize,
        expected: String,
        message: String,
    },
    /// A step of an oracle computation violated a hypothesis it relies on.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
