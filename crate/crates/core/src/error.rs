use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a chain complex: {0}")]
    NotComplex(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ill-defined composition: {0}")]
    IllDefined(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
