use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
