use thiserror::Error;

#[derive(Debug, Error)]
pub enum RegisterError {
    #[error("plan references measure {0:?} which is not in the score matrix")]
    MissingMeasure(String),
    #[error("plan error: {0}")]
    Plan(String),
    #[error("depth sweep needs at least 2 depth levels, got {0}")]
    TooFewLevels(usize),
    #[error(transparent)]
    Stats(#[from] rankstats::StatsError),
    #[error(transparent)]
    Score(#[from] scorer::ScoreError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
