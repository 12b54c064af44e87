use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use probe_forge::ProbeInstance;
use serde::{Deserialize, Serialize};

use crate::error::ClientError;
use crate::wrapper::PromptWrapper;
use crate::TRIAL_FORMAT;

/// Parsed answer shapes, mirroring the ground-truth shapes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtractedAnswer {
    Int(i64),
    Text(String),
    Entities(BTreeMap<String, i64>),
}

/// Hook the runner uses to fill `extracted`/`correct` on each trial as it
/// lands. The answer-extraction rules live downstream; this crate only
/// transports text.
pub trait TrialScorer: Sync {
    fn score(&self, raw: &str, probe: &ProbeInstance) -> (Option<ExtractedAnswer>, bool);
}

/// One model x probe outcome. `raw_response` is preserved verbatim;
/// `correct` is derived only from `extracted` vs the probe's ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub endpoint: String,
    pub probe_id: String,
    pub wrapper: PromptWrapper,
    pub raw_response: String,
    pub extracted: Option<ExtractedAnswer>,
    pub correct: bool,
    pub latency_ms: u64,
    pub timestamp_ms: u64,
    /// Transport failure after retries, when any; such trials count as
    /// incorrect rather than aborting the run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TrialRecord {
    /// Copy with timing zeroed, for byte-stability comparisons across runs.
    pub fn stable(&self) -> TrialRecord {
        TrialRecord { latency_ms: 0, timestamp_ms: 0, ..self.clone() }
    }
}

/// Header line for trial JSONL files. The chat system message and CoT
/// instruction are recorded verbatim so the run is auditable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialFileHeader {
    pub format: String,
    pub endpoint: String,
    pub model_id: String,
    pub wrapper: PromptWrapper,
    pub system_message: Option<String>,
    pub cot_instruction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest_hash: Option<String>,
}

impl TrialFileHeader {
    pub fn new(
        endpoint: &str,
        model_id: &str,
        wrapper: PromptWrapper,
        manifest_hash: Option<String>,
    ) -> Self {
        Self {
            format: TRIAL_FORMAT.to_string(),
            endpoint: endpoint.to_string(),
            model_id: model_id.to_string(),
            wrapper,
            system_message: (wrapper == PromptWrapper::Chat)
                .then(|| crate::CHAT_SYSTEM_MESSAGE.to_string()),
            cot_instruction: (wrapper == PromptWrapper::CoT)
                .then(|| crate::COT_INSTRUCTION.to_string()),
            manifest_hash,
        }
    }
}

pub fn write_trials<W: Write>(
    mut w: W,
    header: &TrialFileHeader,
    trials: &[TrialRecord],
) -> Result<(), ClientError> {
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    for t in trials {
        serde_json::to_writer(&mut w, t)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_trials<R: BufRead>(
    r: R,
) -> Result<(TrialFileHeader, Vec<TrialRecord>), ClientError> {
    let mut lines = r.lines();
    let header_line =
        lines.next().ok_or_else(|| ClientError::Format("trial file is empty".to_string()))??;
    let header: TrialFileHeader = serde_json::from_str(&header_line)
        .map_err(|e| ClientError::Format(format!("bad header line: {e}")))?;
    if header.format != TRIAL_FORMAT {
        return Err(ClientError::Format(format!(
            "unsupported trial format {:?} (expected {TRIAL_FORMAT:?})",
            header.format
        )));
    }
    let mut trials = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let t: TrialRecord = serde_json::from_str(&line)
            .map_err(|e| ClientError::Format(format!("line {}: {e}", lineno + 2)))?;
        trials.push(t);
    }
    Ok((header, trials))
}
