use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("size guard exceeded: {vertices} vertices, limit {limit}")]
    SizeGuard { vertices: usize, limit: usize },
    #[error("not cellularly completable: {0}")]
    NotCompletable(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
