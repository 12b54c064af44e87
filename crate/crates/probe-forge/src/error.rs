use thiserror::Error;

use crate::spec::{ProbeKind, SurfaceForm};

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("depth {depth} is not a standard depth for {kind} (use sweep mode for arbitrary K >= 1)")]
    InvalidDepth { kind: ProbeKind, depth: u32 },
    #[error("surface form {surface} does not match probe kind {kind}")]
    InvalidSurface { kind: ProbeKind, surface: SurfaceForm },
    #[error("multi-entity probes need between 2 and 26 entities, got {0}")]
    InvalidEntityCount(u32),
    #[error("{0} must be non-empty")]
    EmptyParameter(&'static str),
    #[error("trials_per_depth must be >= 1")]
    InvalidTrialCount,
    #[error("operation sequence drives the running state below zero at step {step}")]
    NegativeIntermediateState { step: usize },
    #[error("probe file format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
