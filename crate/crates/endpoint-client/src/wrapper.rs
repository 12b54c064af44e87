use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::wire::ChatMessage;

/// System message used by the `chat` wrapper. Recorded verbatim in trial-file
/// headers so runs stay auditable.
pub const CHAT_SYSTEM_MESSAGE: &str =
    "You are a helpful assistant. Answer the user's question directly and accurately.";

/// Instruction the `cot` wrapper appends to the user message.
pub const COT_INSTRUCTION: &str = "Think step by step, then state the final answer.";

/// Prompt framing around the identical probe text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptWrapper {
    /// The probe prompt verbatim as a single user message, no system text.
    Bare,
    /// A fixed system message followed by the probe prompt.
    Chat,
    /// The probe prompt with the chain-of-thought instruction appended.
    #[serde(rename = "cot")]
    CoT,
}

impl PromptWrapper {
    pub const ALL: [PromptWrapper; 3] =
        [PromptWrapper::Bare, PromptWrapper::Chat, PromptWrapper::CoT];

    pub fn messages(self, prompt: &str) -> Vec<ChatMessage> {
        match self {
            PromptWrapper::Bare => vec![ChatMessage::user(prompt)],
            PromptWrapper::Chat => {
                vec![ChatMessage::system(CHAT_SYSTEM_MESSAGE), ChatMessage::user(prompt)]
            }
            PromptWrapper::CoT => {
                vec![ChatMessage::user(&format!("{prompt}\n\n{COT_INSTRUCTION}"))]
            }
        }
    }
}

impl fmt::Display for PromptWrapper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PromptWrapper::Bare => "bare",
            PromptWrapper::Chat => "chat",
            PromptWrapper::CoT => "cot",
        };
        f.write_str(s)
    }
}

impl FromStr for PromptWrapper {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bare" => Ok(PromptWrapper::Bare),
            "chat" => Ok(PromptWrapper::Chat),
            "cot" | "chain-of-thought" => Ok(PromptWrapper::CoT),
            other => Err(format!("unknown prompt wrapper: {other}")),
        }
    }
}
