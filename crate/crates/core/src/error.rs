use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: n = {n} exceeds limit {limit}")]
    Capacity { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
