use thiserror::Error;

pub type Result<T, E = AppError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] magmakey_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid document: {0}")]
    Doc(String),
    #[error("timed out waiting for the peer")]
    Timeout,
    #[error("the peer is using a different spec")]
    SpecMismatch,
    #[error("key confirmation failed")]
    ConfirmMismatch,
    #[error("malformed frame: {0}")]
    MalformedFrame(String),
    #[error("peer aborted: {0}")]
    Peer(String),
}

pub(crate) fn doc_err(msg: impl Into<String>) -> AppError {
    AppError::Doc(msg.into())
}
