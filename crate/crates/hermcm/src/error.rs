use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid discriminant: {0}")]
    Discriminant(String),
    #[error("unsupported prime {prime}: {reason}")]
    UnsupportedPrime { prime: u64, reason: String },
    #[error("invalid lattice: {0}")]
    Lattice(String),
    #[error("invalid field: {0}")]
    Field(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("newform: {0}")]
    Newform(String),
    #[error("numerical self-check failed: {0}")]
    SelfCheck(String),
    #[error("config: {0}")]
    Config(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
