use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matching class undefined for odd n (n = {0})")]
    OddMatching(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("oracle scale exceeded: graphs with more than 10 vertices each are not supported")]
    OracleScaleExceeded,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty tensor product")]
    EmptyTensorProduct,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
