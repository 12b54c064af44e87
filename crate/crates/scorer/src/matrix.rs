//! The models x measures table.
//!
//! Serialized as CSV (`endpoint,family,param_count,<measure columns...>`)
//! with empty cells for missing values, plus a JSON sidecar carrying trial
//! counts and per-seed SDs. Cell values are written in shortest-roundtrip
//! form so a write/read cycle is lossless.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ScoreError;
use crate::measures::MeasureScore;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointMeta {
    pub name: String,
    pub family: String,
    pub param_count: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    /// endpoint -> measure column -> trial count
    pub n_trials: BTreeMap<String, BTreeMap<String, usize>>,
    /// endpoint -> SD of per-seed composites
    pub per_seed_sd: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    endpoints: Vec<EndpointMeta>,
    columns: Vec<String>,
    /// row-major: values[endpoint_idx][column_idx]
    values: Vec<Vec<Option<f64>>>,
    pub sidecar: Sidecar,
}

impl ScoreMatrix {
    pub fn new(endpoints: Vec<EndpointMeta>) -> Self {
        let rows = endpoints.len();
        Self { endpoints, columns: Vec::new(), values: vec![Vec::new(); rows], sidecar: Sidecar::default() }
    }

    pub fn endpoints(&self) -> &[EndpointMeta] {
        &self.endpoints
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn has_column(&self, column: &str) -> bool {
        self.columns.iter().any(|c| c == column)
    }

    fn endpoint_idx(&self, name: &str) -> Result<usize, ScoreError> {
        self.endpoints
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| ScoreError::UnknownEndpoint(name.to_string()))
    }

    fn column_idx_or_insert(&mut self, column: &str) -> usize {
        match self.columns.iter().position(|c| c == column) {
            Some(i) => i,
            None => {
                self.columns.push(column.to_string());
                for row in &mut self.values {
                    row.push(None);
                }
                self.columns.len() - 1
            }
        }
    }

    pub fn set(&mut self, endpoint: &str, column: &str, value: f64) -> Result<(), ScoreError> {
        let e = self.endpoint_idx(endpoint)?;
        let c = self.column_idx_or_insert(column);
        self.values[e][c] = Some(value);
        Ok(())
    }

    pub fn get(&self, endpoint: &str, column: &str) -> Option<f64> {
        let e = self.endpoints.iter().position(|m| m.name == endpoint)?;
        let c = self.columns.iter().position(|c| c == column)?;
        self.values[e][c]
    }

    /// Inserts aggregated measure scores, filling the sidecar as it goes.
    pub fn insert_scores(&mut self, scores: &[MeasureScore]) -> Result<(), ScoreError> {
        for s in scores {
            let column = s.measure.to_string();
            self.set(&s.endpoint, &column, s.value)?;
            self.sidecar
                .n_trials
                .entry(s.endpoint.clone())
                .or_default()
                .insert(column, s.n_trials);
            if let Some(sd) = s.per_seed_sd {
                self.sidecar.per_seed_sd.insert(s.endpoint.clone(), sd);
            }
        }
        Ok(())
    }

    /// Adds a natural-log parameter-count column for endpoints that declare
    /// a parameter count.
    pub fn add_log_params_column(&mut self) {
        let entries: Vec<(String, f64)> = self
            .endpoints
            .iter()
            .filter_map(|e| e.param_count.map(|p| (e.name.clone(), p.ln())))
            .collect();
        for (name, v) in entries {
            self.set(&name, "log_params", v).expect("endpoint exists");
        }
    }

    /// Indices of endpoints that have every listed column present,
    /// optionally restricted to a named subset.
    pub fn complete_rows(&self, columns: &[&str], subset: Option<&[String]>) -> Result<Vec<usize>, ScoreError> {
        let mut col_indices = Vec::with_capacity(columns.len());
        for c in columns {
            let idx = self
                .columns
                .iter()
                .position(|x| x == c)
                .ok_or_else(|| ScoreError::Matrix(format!("missing measure column {c:?}")))?;
            col_indices.push(idx);
        }
        Ok((0..self.endpoints.len())
            .filter(|&e| {
                if let Some(names) = subset {
                    if !names.iter().any(|n| n == &self.endpoints[e].name) {
                        return false;
                    }
                }
                col_indices.iter().all(|&c| self.values[e][c].is_some())
            })
            .collect())
    }

    /// Values of one column over the given rows (all must be present).
    pub fn column_values(&self, column: &str, rows: &[usize]) -> Result<Vec<f64>, ScoreError> {
        let c = self
            .columns
            .iter()
            .position(|x| x == column)
            .ok_or_else(|| ScoreError::Matrix(format!("missing measure column {column:?}")))?;
        rows.iter()
            .map(|&e| {
                self.values[e][c].ok_or_else(|| {
                    ScoreError::Matrix(format!(
                        "endpoint {} has no value for {column:?}",
                        self.endpoints[e].name
                    ))
                })
            })
            .collect()
    }

    pub fn row_names(&self, rows: &[usize]) -> Vec<String> {
        rows.iter().map(|&e| self.endpoints[e].name.clone()).collect()
    }

    pub fn row_families(&self, rows: &[usize]) -> Vec<String> {
        rows.iter().map(|&e| self.endpoints[e].family.clone()).collect()
    }

    pub fn to_csv_string(&self) -> Result<String, ScoreError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["endpoint".to_string(), "family".to_string(), "param_count".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for (e, meta) in self.endpoints.iter().enumerate() {
            let mut record = vec![
                meta.name.clone(),
                meta.family.clone(),
                meta.param_count.map(|p| format!("{p}")).unwrap_or_default(),
            ];
            for c in 0..self.columns.len() {
                record.push(self.values[e][c].map(|v| format!("{v}")).unwrap_or_default());
            }
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| ScoreError::Matrix(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ScoreError::Matrix(e.to_string()))
    }

    pub fn from_csv_str(text: &str) -> Result<Self, ScoreError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        if header.len() < 3 || &header[0] != "endpoint" || &header[1] != "family" {
            return Err(ScoreError::Matrix(
                "matrix csv must start with endpoint,family,param_count".to_string(),
            ));
        }
        let columns: Vec<String> = header.iter().skip(3).map(|s| s.to_string()).collect();
        let mut endpoints = Vec::new();
        let mut values = Vec::new();
        for record in r.records() {
            let record = record?;
            let param_count = match record.get(2).unwrap_or("") {
                "" => None,
                s => Some(s.parse::<f64>().map_err(|e| ScoreError::Matrix(e.to_string()))?),
            };
            endpoints.push(EndpointMeta {
                name: record.get(0).unwrap_or("").to_string(),
                family: record.get(1).unwrap_or("").to_string(),
                param_count,
            });
            let mut row = Vec::with_capacity(columns.len());
            for i in 0..columns.len() {
                row.push(match record.get(3 + i).unwrap_or("") {
                    "" => None,
                    s => Some(s.parse::<f64>().map_err(|e| ScoreError::Matrix(e.to_string()))?),
                });
            }
            values.push(row);
        }
        Ok(Self { endpoints, columns, values, sidecar: Sidecar::default() })
    }

    /// Writes `<path>` as CSV and `<path>.sidecar.json` next to it.
    pub fn write_files(&self, path: &Path) -> Result<(), ScoreError> {
        let csv = self.to_csv_string()?;
        std::fs::write(path, csv)?;
        let sidecar_path = sidecar_path(path);
        let mut f = std::fs::File::create(sidecar_path)?;
        serde_json::to_writer_pretty(&mut f, &self.sidecar)?;
        f.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_files(path: &Path) -> Result<Self, ScoreError> {
        let text = std::fs::read_to_string(path)?;
        let mut matrix = Self::from_csv_str(&text)?;
        let sc = sidecar_path(path);
        if sc.exists() {
            matrix.sidecar = serde_json::from_str(&std::fs::read_to_string(sc)?)?;
        }
        Ok(matrix)
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".sidecar.json");
    std::path::PathBuf::from(os)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(name: &str, family: &str) -> EndpointMeta {
        EndpointMeta { name: name.to_string(), family: family.to_string(), param_count: Some(7.0) }
    }

    #[test]
    fn round_trips_through_csv() {
        let mut m = ScoreMatrix::new(vec![meta("a", "f1"), meta("b", "f2")]);
        m.set("a", "wmf_am", 1.0 / 3.0).unwrap();
        m.set("b", "wmf_am", 0.75).unwrap();
        m.set("b", "yoked", 0.5).unwrap();
        let csv = m.to_csv_string().unwrap();
        let back = ScoreMatrix::from_csv_str(&csv).unwrap();
        assert_eq!(back.get("a", "wmf_am"), Some(1.0 / 3.0));
        assert_eq!(back.get("a", "yoked"), None);
        assert_eq!(back.get("b", "yoked"), Some(0.5));
        assert_eq!(back.endpoints()[1].family, "f2");
    }

    #[test]
    fn complete_rows_skip_missing_cells() {
        let mut m = ScoreMatrix::new(vec![meta("a", "f"), meta("b", "f"), meta("c", "g")]);
        m.set("a", "x", 1.0).unwrap();
        m.set("b", "x", 2.0).unwrap();
        m.set("a", "y", 3.0).unwrap();
        m.set("c", "y", 4.0).unwrap();
        let rows = m.complete_rows(&["x", "y"], None).unwrap();
        assert_eq!(m.row_names(&rows), vec!["a"]);
        assert!(m.complete_rows(&["z"], None).is_err());
    }

    #[test]
    fn log_params_column_uses_natural_log() {
        let mut m = ScoreMatrix::new(vec![meta("a", "f")]);
        m.add_log_params_column();
        assert_eq!(m.get("a", "log_params"), Some(7.0_f64.ln()));
    }
}
