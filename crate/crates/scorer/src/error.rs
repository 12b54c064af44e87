use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("trial references unknown probe {0}")]
    UnknownProbeRef(String),
    #[error("score matrix has no endpoint {0}")]
    UnknownEndpoint(String),
    #[error("score matrix error: {0}")]
    Matrix(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
