use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("illegal move ({rule}): {detail}")]
    IllegalMove { rule: String, detail: String },
    #[error("pipeline failure: {0}")]
    Pipeline(String),
    #[error("audit rejected: {0}")]
    AuditRejected(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
