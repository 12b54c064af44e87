use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::ProbeError;
use crate::render;
use crate::spec::ProbeSpec;

/// One state update inside a probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Operation {
    /// Signed delta applied to the running total.
    Delta(i64),
    /// Direct attribute assignment (non-arithmetic probes).
    Assign(String),
    /// Signed delta applied to one named entity (multi-entity probes).
    EntityDelta { entity: String, delta: i64 },
}

/// The answer the probe is scored against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroundTruth {
    Numeric(i64),
    Text(String),
    /// Final per-entity counts for multi-entity probes.
    Entities(BTreeMap<String, i64>),
}

/// Initial state, mirroring [`GroundTruth`] shapes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Numeric(i64),
    Text(String),
    Entities(BTreeMap<String, i64>),
}

/// A fully rendered probe: prompt text plus everything needed to score it
/// and to reconstruct where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeInstance {
    pub spec: ProbeSpec,
    pub prompt: String,
    pub initial_state: InitialState,
    pub operations: Vec<Operation>,
    pub ground_truth: GroundTruth,
    pub entity_name: String,
}

impl ProbeInstance {
    /// Builds an arithmetic probe (points / inventory / accounts) from
    /// explicit parts, computing the ground truth as initial + sum of deltas.
    /// Every running prefix must stay non-negative so the narrative remains
    /// physically valid.
    pub fn arithmetic(
        spec: ProbeSpec,
        entity: &str,
        initial: i64,
        deltas: &[i64],
    ) -> Result<Self, ProbeError> {
        let mut running = initial;
        for (step, d) in deltas.iter().enumerate() {
            running += d;
            if running < 0 {
                return Err(ProbeError::NegativeIntermediateState { step });
            }
        }
        let prompt = render::arithmetic_prompt(spec.surface, spec.template, entity, initial, deltas);
        Ok(Self {
            spec,
            prompt,
            initial_state: InitialState::Numeric(initial),
            operations: deltas.iter().map(|d| Operation::Delta(*d)).collect(),
            ground_truth: GroundTruth::Numeric(running),
            entity_name: entity.to_string(),
        })
    }

    /// Builds a non-arithmetic probe from an initial value and a sequence of
    /// assignments; the ground truth is the last assignment.
    pub fn assignments(
        spec: ProbeSpec,
        subject: &str,
        initial: &str,
        assigns: &[String],
    ) -> Result<Self, ProbeError> {
        let last = assigns.last().ok_or(ProbeError::EmptyParameter("assignments"))?;
        let prompt =
            render::assignment_prompt(spec.surface, spec.template, subject, initial, assigns);
        Ok(Self {
            spec,
            prompt,
            initial_state: InitialState::Text(initial.to_string()),
            operations: assigns.iter().map(|a| Operation::Assign(a.clone())).collect(),
            ground_truth: GroundTruth::Text(last.clone()),
            entity_name: subject.to_string(),
        })
    }

    /// Builds a multi-entity inventory probe from initial per-item counts and
    /// per-item deltas. Items untouched by any operation keep their initial
    /// count in the ground truth.
    pub fn multi_entity(
        spec: ProbeSpec,
        initial: &[(String, i64)],
        ops: &[(String, i64)],
    ) -> Result<Self, ProbeError> {
        let mut state: BTreeMap<String, i64> =
            initial.iter().map(|(n, v)| (n.clone(), *v)).collect();
        for (step, (entity, delta)) in ops.iter().enumerate() {
            let slot = state
                .get_mut(entity)
                .ok_or_else(|| ProbeError::Format(format!("operation targets unknown entity {entity}")))?;
            *slot += delta;
            if *slot < 0 {
                return Err(ProbeError::NegativeIntermediateState { step });
            }
        }
        let prompt = render::multi_entity_prompt(spec.template, initial, ops);
        Ok(Self {
            spec,
            prompt,
            initial_state: InitialState::Entities(
                initial.iter().map(|(n, v)| (n.clone(), *v)).collect(),
            ),
            operations: ops
                .iter()
                .map(|(entity, delta)| Operation::EntityDelta { entity: entity.clone(), delta: *delta })
                .collect(),
            ground_truth: GroundTruth::Entities(state),
            entity_name: "warehouse".to_string(),
        })
    }

    /// Stable content id: first 16 hex chars of the SHA-256 of the serialized
    /// instance. Identical instances get identical ids on every platform.
    pub fn id(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("probe instances always serialize");
        let digest = Sha256::digest(&bytes);
        let mut id = String::with_capacity(16);
        for b in &digest[..8] {
            id.push_str(&format!("{b:02x}"));
        }
        id
    }

    /// Signed deltas for arithmetic probes (`None` for other kinds).
    pub fn deltas(&self) -> Option<Vec<i64>> {
        if self.spec.multi_entity || !self.spec.kind.is_arithmetic() {
            return None;
        }
        self.operations
            .iter()
            .map(|op| match op {
                Operation::Delta(d) => Some(*d),
                _ => None,
            })
            .collect()
    }

    pub fn initial_numeric(&self) -> Option<i64> {
        match self.initial_state {
            InitialState::Numeric(v) => Some(v),
            _ => None,
        }
    }

    pub fn truth_numeric(&self) -> Option<i64> {
        match self.ground_truth {
            GroundTruth::Numeric(v) => Some(v),
            _ => None,
        }
    }
}
