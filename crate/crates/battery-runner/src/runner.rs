use endpoint_client::{MockBehavior, ModelEndpoint, PromptClient, PromptWrapper, RunOptions, Transport};
use serde::Serialize;

use crate::error::BatteryError;
use crate::task::{BatteryTask, Checkpoint, MatchRule, Step};
use crate::tools::ToolState;

/// Answers battery prompts. Tasks are stateful, so a responder is created
/// per task run.
pub trait Responder {
    fn respond(&mut self, prompt: &str) -> Result<(String, Option<String>), BatteryError>;
}

/// Replays a fixed answer list, one per prompt; runs out to empty answers.
pub struct ScriptedResponder {
    answers: Vec<String>,
    cursor: usize,
}

impl ScriptedResponder {
    pub fn new<S: Into<String>>(answers: Vec<S>) -> Self {
        Self { answers: answers.into_iter().map(Into::into).collect(), cursor: 0 }
    }
}

impl Responder for ScriptedResponder {
    fn respond(&mut self, _prompt: &str) -> Result<(String, Option<String>), BatteryError> {
        let answer = self.answers.get(self.cursor).cloned().unwrap_or_default();
        self.cursor += 1;
        Ok((answer, None))
    }
}

/// Task analog of the probe mocks: the capacity budget counts checkpoints
/// instead of probe depth, so perfect-tracker:D passes the first D
/// checkpoints of each task.
pub struct MockTaskResponder {
    behavior: MockBehavior,
    expectations: Vec<Checkpoint>,
    task_id: String,
    cursor: usize,
}

impl MockTaskResponder {
    pub fn new(behavior: MockBehavior, task: &BatteryTask) -> Self {
        let expectations = task
            .steps
            .iter()
            .filter_map(|s| match s {
                Step::Prompt { checkpoint, .. } => Some(checkpoint.clone()),
                _ => None,
            })
            .collect();
        Self { behavior, expectations, task_id: task.id.clone(), cursor: 0 }
    }

    fn right_answer(checkpoint: &Checkpoint) -> String {
        match checkpoint.rule {
            MatchRule::Number => format!("The answer is {}.", checkpoint.expect),
            // text checkpoints compare the whole normalized response
            MatchRule::Text => format!("{}.", checkpoint.expect),
        }
    }

    fn wrong_answer(checkpoint: &Checkpoint, offset: i64) -> String {
        match checkpoint.rule {
            MatchRule::Number => {
                let v: i64 = checkpoint.expect.parse().unwrap_or(0);
                format!("The answer is {}.", v + offset)
            }
            MatchRule::Text => "unknown".to_string(),
        }
    }
}

impl Responder for MockTaskResponder {
    fn respond(&mut self, _prompt: &str) -> Result<(String, Option<String>), BatteryError> {
        let ordinal = self.cursor + 1;
        let checkpoint = self.expectations.get(self.cursor).cloned().unwrap_or(Checkpoint {
            expect: "0".to_string(),
            rule: MatchRule::Number,
        });
        self.cursor += 1;
        let text = match self.behavior {
            MockBehavior::PerfectTracker { capacity } => {
                if ordinal as u32 <= capacity {
                    Self::right_answer(&checkpoint)
                } else {
                    Self::wrong_answer(&checkpoint, 1)
                }
            }
            MockBehavior::LastOpOnly => {
                if ordinal == 1 {
                    Self::right_answer(&checkpoint)
                } else {
                    Self::wrong_answer(&checkpoint, 2)
                }
            }
            MockBehavior::RandomPlausible { seed } => {
                let h = seed
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add(ordinal as u64)
                    .wrapping_add(self.task_id.len() as u64);
                Self::wrong_answer(&checkpoint, 1 + (h % 7) as i64)
            }
            MockBehavior::VerboseEmbedder { capacity } => {
                if ordinal as u32 <= capacity {
                    match checkpoint.rule {
                        MatchRule::Number => {
                            let v: i64 = checkpoint.expect.parse().unwrap_or(0);
                            format!(
                                "Working through it, I settled on {v}. I also sanity-checked \
                                 against {} and {}.",
                                v + 3,
                                v + 7
                            )
                        }
                        MatchRule::Text => format!("{}.", checkpoint.expect),
                    }
                } else {
                    Self::wrong_answer(&checkpoint, 1)
                }
            }
            MockBehavior::CancellationBlind => Self::right_answer(&checkpoint),
        };
        Ok((text, None))
    }
}

struct HttpResponder {
    client: PromptClient,
    wrapper: PromptWrapper,
}

impl Responder for HttpResponder {
    fn respond(&mut self, prompt: &str) -> Result<(String, Option<String>), BatteryError> {
        Ok(self.client.complete(self.wrapper, prompt)?)
    }
}

/// Builds the right responder for an endpoint: HTTP endpoints get a real
/// client, mock endpoints get the checkpoint-budget mock.
pub fn battery_responder(
    endpoint: &ModelEndpoint,
    wrapper: PromptWrapper,
    opts: &RunOptions,
    task: &BatteryTask,
) -> Result<Box<dyn Responder>, BatteryError> {
    match endpoint.transport {
        Transport::Http => Ok(Box::new(HttpResponder {
            client: PromptClient::new(endpoint, opts)?,
            wrapper,
        })),
        Transport::Mock => {
            let behavior: MockBehavior = endpoint
                .model_id
                .parse()
                .map_err(|_| endpoint_client::ClientError::InvalidMockBehavior(endpoint.model_id.clone()))?;
            Ok(Box::new(MockTaskResponder::new(behavior, task)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranscriptEntry {
    pub step: usize,
    pub kind: &'static str,
    /// Tool result line, or the fully rendered prompt.
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub response: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskOutcome {
    pub task_id: String,
    pub category: crate::task::TaskCategory,
    pub score: f64,
    pub passed: usize,
    pub total: usize,
    pub transcript: Vec<TranscriptEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryOutcome {
    /// Mean task score.
    pub abs: f64,
    pub tasks: Vec<TaskOutcome>,
}

fn normalize_text(s: &str) -> String {
    s.trim().trim_end_matches(['.', '!', '?']).trim().to_lowercase()
}

fn checkpoint_passes(raw: &str, checkpoint: &Checkpoint) -> bool {
    match checkpoint.rule {
        MatchRule::Number => {
            let expected: i64 = checkpoint.expect.parse().unwrap_or(i64::MIN);
            scorer::extract_answer(raw, scorer::ExtractionMode::StrictLastNumber, expected).1
        }
        MatchRule::Text => normalize_text(raw) == normalize_text(&checkpoint.expect),
    }
}

/// Runs one task: steps execute in order on a fresh tool state; each
/// checkpoint is scored by exact match; the score is passed / total.
pub fn run_task(
    task: &BatteryTask,
    responder: &mut dyn Responder,
) -> Result<TaskOutcome, BatteryError> {
    task.validate()?;
    let mut state = ToolState::default();
    let mut transcript = Vec::with_capacity(task.steps.len());
    let mut passed = 0usize;
    let mut total = 0usize;
    for (i, step) in task.steps.iter().enumerate() {
        match step {
            Step::ToolCall { tool, args } => {
                let line = state
                    .apply(tool, args)
                    .map_err(|detail| BatteryError::Tool { task: task.id.clone(), detail })?;
                transcript.push(TranscriptEntry {
                    step: i,
                    kind: "tool_call",
                    detail: line,
                    response: None,
                    expected: None,
                    passed: None,
                    error: None,
                });
            }
            Step::Prompt { text, checkpoint } => {
                let rendered = state
                    .render(text)
                    .map_err(|detail| BatteryError::Tool { task: task.id.clone(), detail })?;
                let (raw, error) = responder.respond(&rendered)?;
                let ok = error.is_none() && checkpoint_passes(&raw, checkpoint);
                total += 1;
                passed += usize::from(ok);
                transcript.push(TranscriptEntry {
                    step: i,
                    kind: "prompt",
                    detail: rendered,
                    response: Some(raw),
                    expected: Some(checkpoint.expect.clone()),
                    passed: Some(ok),
                    error,
                });
            }
        }
    }
    Ok(TaskOutcome {
        task_id: task.id.clone(),
        category: task.category,
        score: passed as f64 / total as f64,
        passed,
        total,
        transcript,
    })
}

/// Runs every task and averages the scores into the battery score.
pub fn run_battery<F>(tasks: &[BatteryTask], mut make_responder: F) -> Result<BatteryOutcome, BatteryError>
where
    F: FnMut(&BatteryTask) -> Result<Box<dyn Responder>, BatteryError>,
{
    if tasks.is_empty() {
        return Err(BatteryError::MalformedPack("battery has no tasks".to_string()));
    }
    let mut outcomes = Vec::with_capacity(tasks.len());
    for task in tasks {
        let mut responder = make_responder(task)?;
        outcomes.push(run_task(task, responder.as_mut())?);
    }
    let abs = outcomes.iter().map(|t| t.score).sum::<f64>() / outcomes.len() as f64;
    Ok(BatteryOutcome { abs, tasks: outcomes })
}
