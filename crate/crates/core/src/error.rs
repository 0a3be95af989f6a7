use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {0}: {1}")]
    InvalidType(String, String),
    #[error("invalid reduced word: {0}")]
    InvalidWord(String),
    #[error("root string through a proportional root is undefined")]
    ProportionalRoots,
    #[error("unknown root {0}")]
    UnknownRoot(String),
    #[error("root system invariant violated: {0}")]
    Invariant(String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("operands belong to different algebras: {0}")]
    Mismatch(String),
    #[error("monomial outside the ambient box: {0}")]
    OutOfBox(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
