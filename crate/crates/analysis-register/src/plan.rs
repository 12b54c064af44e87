use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::RegisterError;
use crate::PLAN_FORMAT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryType {
    /// Participates in the Bonferroni/Holm family.
    Confirmatory,
    Exploratory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisMethod {
    TauB,
    Spearman,
    Pearson,
    PartialResidual,
    PartialFormula,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub name: String,
    pub predictor: String,
    pub criterion: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub controls: Vec<String>,
    #[serde(rename = "type")]
    pub entry_type: EntryType,
    pub method: AnalysisMethod,
    /// Attach a flat percentile bootstrap CI.
    #[serde(default)]
    pub bootstrap_ci: bool,
    /// Also attach the family-clustered CI.
    #[serde(default)]
    pub clustered_ci: bool,
    /// Restrict to these endpoints (roster subsets are explicit in the
    /// plan, never implicit).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaTestSpec {
    pub name: String,
    pub predictor_a: String,
    pub predictor_b: String,
    pub criterion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self { resamples: 10_000, seed: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterPlan {
    pub format: String,
    pub name: String,
    /// Family-wise alpha for the confirmatory family.
    pub alpha_family: f64,
    pub correction: rankstats::CorrectionMethod,
    #[serde(default)]
    pub bootstrap: BootstrapConfig,
    pub entries: Vec<PlanEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta_tests: Vec<DeltaTestSpec>,
}

impl RegisterPlan {
    pub fn validate(&self) -> Result<(), RegisterError> {
        if self.format != PLAN_FORMAT {
            return Err(RegisterError::Plan(format!(
                "unsupported plan format {:?} (expected {PLAN_FORMAT:?})",
                self.format
            )));
        }
        if !(self.alpha_family > 0.0 && self.alpha_family < 1.0) {
            return Err(RegisterError::Plan("alpha_family must be in (0, 1)".to_string()));
        }
        if self.bootstrap.resamples == 0 {
            return Err(RegisterError::Plan("bootstrap.resamples must be >= 1".to_string()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(&e.name) {
                return Err(RegisterError::Plan(format!("duplicate entry name {}", e.name)));
            }
            match e.method {
                AnalysisMethod::PartialResidual => {
                    if e.controls.is_empty() {
                        return Err(RegisterError::Plan(format!(
                            "{}: partial_residual needs at least one control",
                            e.name
                        )));
                    }
                }
                AnalysisMethod::PartialFormula => {
                    if e.controls.len() != 1 {
                        return Err(RegisterError::Plan(format!(
                            "{}: partial_formula takes exactly one control",
                            e.name
                        )));
                    }
                }
                _ => {
                    if !e.controls.is_empty() {
                        return Err(RegisterError::Plan(format!(
                            "{}: controls are only valid for partial methods",
                            e.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_str(text: &str) -> Result<Self, RegisterError> {
        let plan: RegisterPlan =
            serde_json::from_str(text).map_err(|e| RegisterError::Plan(e.to_string()))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn load(path: &Path) -> Result<Self, RegisterError> {
        Self::from_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plans always serialize")
    }
}

const DEFAULT_PLAN: &str = include_str!("../assets/default_plan.json");

/// The frozen default plan. Callers who want to edit it write a copy; the
/// embedded original never changes at run time.
pub fn default_plan() -> RegisterPlan {
    RegisterPlan::from_str(DEFAULT_PLAN).expect("bundled plan is valid")
}
