//! Turns raw model responses into scores.
//!
//! Two extraction modes are supported and reported side by side, because
//! verbose models bury the right value under trailing numbers:
//!
//! * [`ExtractionMode::StrictLastNumber`] — the parsed answer is the last
//!   integer token in the response (signs and thousands separators handled,
//!   digits inside words ignored). The default.
//! * [`ExtractionMode::ContainsCorrect`] — the trial is correct if the
//!   ground-truth value appears as a standalone integer anywhere.
//!
//! `ContainsCorrect` accepts a superset of `StrictLastNumber`, so its
//! accuracy is never lower on the same trials.
//!
//! [`score_trials`] aggregates trials into the per-model measure set
//! (composite score, per-depth accuracies, control accuracies, per-wrapper
//! and per-seed breakdowns), and [`ScoreMatrix`] carries the models x
//! measures table to the analysis stage as CSV plus a JSON sidecar.

mod error;
mod extract;
mod matrix;
mod measures;

pub use error::ScoreError;
pub use extract::{
    extract_answer, extract_entities, extract_text, scan_integers, ExtractionMode, Extractor,
};
pub use matrix::{EndpointMeta, ScoreMatrix, Sidecar};
pub use measures::{score_trials, trial_value, Measure, MeasureScore, ProbeIndex};
