use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("endpoint {endpoint} unreachable after {attempts} attempts: {detail}")]
    EndpointUnreachable { endpoint: String, attempts: u32, detail: String },
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("unknown mock behavior {0:?} (see `mock list`)")]
    InvalidMockBehavior(String),
    #[error("roster error: {0}")]
    InvalidRoster(String),
    #[error("parallelism must be >= 1")]
    InvalidParallelism,
    #[error("trial file format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
