//! Sends rendered probes to model endpoints and records the raw outcomes.
//!
//! The wire protocol is a chat-completions-style JSON POST (see [`wire`]):
//! `POST {base_url}/v1/chat/completions` with `temperature` pinned to 0 and
//! `top_p` to 1, so decoding is greedy everywhere. Three prompt wrappers are
//! supported: `bare` (the probe text as the only user message), `chat` (a
//! fixed system message in front), and `cot` (an explicit think-step-by-step
//! instruction appended).
//!
//! Endpoints with the `mock` transport never touch the network: the model id
//! selects one of the deterministic [`MockBehavior`]s, which answer from the
//! probe's ground truth. They exist so the full pipeline can run and be
//! verified at desk scale.

mod endpoint;
mod error;
mod mock;
mod record;
mod runner;
pub mod wire;
mod wrapper;

pub use endpoint::{load_roster, ModelEndpoint, Roster, Transport};
pub use error::ClientError;
pub use mock::{mock_respond, MockBehavior};
pub use record::{
    read_trials, write_trials, ExtractedAnswer, TrialFileHeader, TrialRecord, TrialScorer,
};
pub use runner::{run_trials, PromptClient, RunOptions, RunOutcome};
pub use wrapper::{PromptWrapper, CHAT_SYSTEM_MESSAGE, COT_INSTRUCTION};

/// Format tag written into trial-file headers.
pub const TRIAL_FORMAT: &str = "trials/v1";
