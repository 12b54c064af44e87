use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::BatteryError;
use crate::PACK_FORMAT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskCategory {
    ToolUse,
    MultiStepReasoning,
    StateTracking,
}

impl fmt::Display for TaskCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskCategory::ToolUse => f.write_str("tool_use"),
            TaskCategory::MultiStepReasoning => f.write_str("multi_step_reasoning"),
            TaskCategory::StateTracking => f.write_str("state_tracking"),
        }
    }
}

/// How a checkpoint compares the model answer to the expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MatchRule {
    /// Last-integer extraction, exact match on the parsed value.
    #[default]
    Number,
    /// Normalized string equality (trimmed, lowercased, trailing
    /// punctuation stripped).
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub expect: String,
    #[serde(default, rename = "match")]
    pub rule: MatchRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// Deterministic transition of the simulated tool state.
    ToolCall {
        tool: String,
        #[serde(default)]
        args: BTreeMap<String, serde_json::Value>,
    },
    /// A prompt sent to the model; the reply is scored against the
    /// checkpoint. `{{kv.<key>}}` and `{{calc}}` placeholders pull from the
    /// current tool state.
    Prompt { text: String, checkpoint: Checkpoint },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryTask {
    pub id: String,
    pub category: TaskCategory,
    pub steps: Vec<Step>,
}

impl BatteryTask {
    pub fn checkpoints(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Prompt { .. })).count()
    }

    pub fn validate(&self) -> Result<(), BatteryError> {
        let bad = |detail: String| BatteryError::MalformedTask { task: self.id.clone(), detail };
        if self.id.is_empty() {
            return Err(BatteryError::MalformedTask {
                task: "<unnamed>".to_string(),
                detail: "empty task id".to_string(),
            });
        }
        if self.checkpoints() == 0 {
            return Err(bad("a task needs at least one checkpoint".to_string()));
        }
        for step in &self.steps {
            match step {
                Step::ToolCall { tool, .. } => {
                    if !crate::tools::KNOWN_TOOLS.contains(&tool.as_str()) {
                        return Err(bad(format!("unknown tool {tool:?}")));
                    }
                }
                Step::Prompt { text, checkpoint } => {
                    if checkpoint.expect.is_empty() {
                        return Err(bad("empty checkpoint expectation".to_string()));
                    }
                    if checkpoint.rule == MatchRule::Number
                        && checkpoint.expect.parse::<i64>().is_err()
                    {
                        return Err(bad(format!(
                            "numeric checkpoint expects a non-integer {:?}",
                            checkpoint.expect
                        )));
                    }
                    crate::tools::check_placeholders(text)
                        .map_err(|detail| bad(detail))?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskPack {
    pub format: String,
    pub name: String,
    pub tasks: Vec<BatteryTask>,
}

impl TaskPack {
    pub fn validate(&self) -> Result<(), BatteryError> {
        if self.format != PACK_FORMAT {
            return Err(BatteryError::MalformedPack(format!(
                "unsupported pack format {:?} (expected {PACK_FORMAT:?})",
                self.format
            )));
        }
        if self.tasks.is_empty() {
            return Err(BatteryError::MalformedPack("pack has no tasks".to_string()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for t in &self.tasks {
            t.validate()?;
            if !seen.insert(&t.id) {
                return Err(BatteryError::MalformedPack(format!("duplicate task id {}", t.id)));
            }
        }
        Ok(())
    }

    pub fn from_str(text: &str) -> Result<Self, BatteryError> {
        let pack: TaskPack =
            serde_json::from_str(text).map_err(|e| BatteryError::MalformedPack(e.to_string()))?;
        pack.validate()?;
        Ok(pack)
    }

    pub fn load(path: &Path) -> Result<Self, BatteryError> {
        Self::from_str(&std::fs::read_to_string(path)?)
    }
}
