use thiserror::Error;

#[derive(Debug, Error)]
pub enum BatteryError {
    #[error("malformed task {task}: {detail}")]
    MalformedTask { task: String, detail: String },
    #[error("task pack error: {0}")]
    MalformedPack(String),
    #[error("tool error in task {task}: {detail}")]
    Tool { task: String, detail: String },
    #[error(transparent)]
    Client(#[from] endpoint_client::ClientError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
