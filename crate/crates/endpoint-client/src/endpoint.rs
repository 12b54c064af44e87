use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ClientError;
use crate::mock::MockBehavior;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transport {
    Http,
    Mock,
}

/// One evaluable model endpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelEndpoint {
    pub name: String,
    /// Architecture family, used by the clustered bootstrap and LOFO.
    pub family: String,
    #[serde(default)]
    pub base_url: String,
    /// For `mock` transports this selects the behavior, e.g.
    /// "perfect-tracker:7".
    pub model_id: String,
    /// Parameter count in billions; required by log-params analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param_count: Option<f64>,
    pub transport: Transport,
    /// Externally collected measure values merged into the score matrix
    /// (e.g. an outcome-correctness score ingested as data).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measures: BTreeMap<String, f64>,
}

impl ModelEndpoint {
    pub fn mock(name: &str, family: &str, behavior: &str) -> Self {
        Self {
            name: name.to_string(),
            family: family.to_string(),
            base_url: String::new(),
            model_id: behavior.to_string(),
            param_count: None,
            transport: Transport::Mock,
            measures: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<(), ClientError> {
        if self.name.is_empty() {
            return Err(ClientError::InvalidRoster("endpoint with empty name".to_string()));
        }
        if self.family.is_empty() {
            return Err(ClientError::InvalidRoster(format!("endpoint {}: empty family", self.name)));
        }
        if let Some(p) = self.param_count {
            if !(p > 0.0) {
                return Err(ClientError::InvalidRoster(format!(
                    "endpoint {}: param_count must be > 0, got {p}",
                    self.name
                )));
            }
        }
        match self.transport {
            Transport::Http => {
                if self.base_url.is_empty() {
                    return Err(ClientError::InvalidRoster(format!(
                        "endpoint {}: http transport needs a base_url",
                        self.name
                    )));
                }
            }
            Transport::Mock => {
                self.model_id.parse::<MockBehavior>().map_err(|_| {
                    ClientError::InvalidMockBehavior(self.model_id.clone())
                })?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Roster {
    pub endpoints: Vec<ModelEndpoint>,
}

impl Roster {
    pub fn validate(&self) -> Result<(), ClientError> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.endpoints {
            e.validate()?;
            if !seen.insert(e.name.as_str()) {
                return Err(ClientError::InvalidRoster(format!("duplicate endpoint name {}", e.name)));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&ModelEndpoint> {
        self.endpoints.iter().find(|e| e.name == name)
    }
}

pub fn load_roster(path: &Path) -> Result<Roster, ClientError> {
    let text = std::fs::read_to_string(path)?;
    let roster: Roster = serde_json::from_str(&text)
        .map_err(|e| ClientError::InvalidRoster(format!("{}: {e}", path.display())))?;
    roster.validate()?;
    Ok(roster)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_family_and_bad_mock_ids() {
        let mut e = ModelEndpoint::mock("a", "", "perfect-tracker:3");
        assert!(e.validate().is_err());
        e.family = "fam".to_string();
        assert!(e.validate().is_ok());
        e.model_id = "no-such-behavior".to_string();
        assert!(matches!(e.validate(), Err(ClientError::InvalidMockBehavior(_))));
    }

    #[test]
    fn rejects_duplicate_names() {
        let roster = Roster {
            endpoints: vec![
                ModelEndpoint::mock("a", "f", "last-op-only"),
                ModelEndpoint::mock("a", "g", "last-op-only"),
            ],
        };
        assert!(roster.validate().is_err());
    }
}
