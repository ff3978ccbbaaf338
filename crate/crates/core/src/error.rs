use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource cap hit: {0}")]
    Resource(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("not a dual action: {0}")]
    NotDualAction(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
