//! Deterministic multi-step agent tasks.
//!
//! A task is a scripted sequence of steps: tool calls against simulated
//! tools (an integer calculator and a key-value store) interleaved with
//! prompts whose answers are scored as exact-match checkpoints. The task
//! score is checkpoints passed / checkpoints total, and the battery score
//! is the mean over tasks. Tool transitions are pure functions of the tool
//! state and the call arguments, and every task runs on a fresh state, so
//! scores do not depend on task order.
//!
//! Ten example tasks across the three categories (tool use, multi-step
//! reasoning, state tracking) ship with the crate; external packs use the
//! same JSON format.

mod error;
mod pack;
mod runner;
mod task;
mod tools;

pub use error::BatteryError;
pub use pack::bundled_pack;
pub use runner::{
    battery_responder, run_battery, run_task, BatteryOutcome, MockTaskResponder, Responder,
    ScriptedResponder, TaskOutcome, TranscriptEntry,
};
pub use task::{BatteryTask, Checkpoint, MatchRule, Step, TaskCategory, TaskPack};
pub use tools::ToolState;

/// Format tag for task-pack files.
pub const PACK_FORMAT: &str = "battery-pack/v1";
