//! Aggregation of trials into per-model measure scores.
//!
//! The composite score is the mean of the per-depth accuracies (equal
//! weight per depth), which equals the plain fraction correct when depth
//! blocks are equal-sized. Per-trial values are re-derived from the raw
//! response text under the requested extraction mode, so a trial set can be
//! scored under both modes without re-running models.

use std::collections::BTreeMap;
use std::fmt;

use endpoint_client::{PromptWrapper, TrialRecord};
use probe_forge::{ProbeInstance, ProbeKind};

use crate::error::ScoreError;
use crate::extract::{ExtractionMode, Extractor};

/// Probe lookup by content id.
pub struct ProbeIndex {
    map: BTreeMap<String, ProbeInstance>,
}

impl ProbeIndex {
    pub fn new(probes: &[ProbeInstance]) -> Self {
        Self { map: probes.iter().map(|p| (p.id(), p.clone())).collect() }
    }

    pub fn get(&self, id: &str) -> Option<&ProbeInstance> {
        self.map.get(id)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Composite cumulative-tracking score (mean over per-depth means).
    WmfAm,
    WmfAmPerK(u32),
    Yoked,
    NonArith,
    K1Control,
    /// Composite restricted to one prompt wrapper.
    PerWrapper(PromptWrapper),
    /// Composite restricted to one generation seed.
    PerSeed(u64),
    /// Composite minus yoked accuracy.
    WmfMinusYoked,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::WmfAm => write!(f, "wmf_am"),
            Measure::WmfAmPerK(k) => write!(f, "wmf_am_k{k}"),
            Measure::Yoked => write!(f, "yoked"),
            Measure::NonArith => write!(f, "non_arith"),
            Measure::K1Control => write!(f, "k1_control"),
            Measure::PerWrapper(w) => write!(f, "wmf_am_{w}"),
            Measure::PerSeed(s) => write!(f, "wmf_am_seed{s}"),
            Measure::WmfMinusYoked => write!(f, "wmf_minus_yoked"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureScore {
    pub endpoint: String,
    pub measure: Measure,
    /// Fraction correct in [0, 1].
    pub value: f64,
    pub n_trials: usize,
    /// Sample SD of the per-seed composites; present only when at least two
    /// seeds were aggregated (attached to the composite row).
    pub per_seed_sd: Option<f64>,
}

/// Fraction of one trial answered correctly under `mode` (0/1 for scalar
/// probes, per-item mean for multi-entity probes).
pub fn trial_value(trial: &TrialRecord, probe: &ProbeInstance, mode: ExtractionMode) -> f64 {
    Extractor::new(mode).value(&trial.raw_response, probe)
}

struct Row<'a> {
    probe: &'a ProbeInstance,
    wrapper: PromptWrapper,
    value: f64,
}

/// Aggregates trials into the full measure set, one group of rows per
/// endpoint, in first-appearance endpoint order.
pub fn score_trials(
    trials: &[TrialRecord],
    probes: &ProbeIndex,
    mode: ExtractionMode,
) -> Result<Vec<MeasureScore>, ScoreError> {
    let mut order: Vec<&str> = Vec::new();
    let mut by_endpoint: BTreeMap<&str, Vec<Row<'_>>> = BTreeMap::new();
    for t in trials {
        let probe = probes
            .get(&t.probe_id)
            .ok_or_else(|| ScoreError::UnknownProbeRef(t.probe_id.clone()))?;
        if !order.contains(&t.endpoint.as_str()) {
            order.push(&t.endpoint);
        }
        by_endpoint.entry(&t.endpoint).or_default().push(Row {
            probe,
            wrapper: t.wrapper,
            value: trial_value(t, probe, mode),
        });
    }

    let mut out = Vec::new();
    for endpoint in order {
        let rows = &by_endpoint[endpoint];
        aggregate_endpoint(endpoint, rows, &mut out);
    }
    Ok(out)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean over per-depth means for a set of (depth, value) rows.
fn depth_composite(rows: &[(u32, f64)]) -> f64 {
    let mut by_k: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    for (k, v) in rows {
        by_k.entry(*k).or_default().push(*v);
    }
    let per_k: Vec<f64> = by_k.values().map(|vs| mean(vs)).collect();
    mean(&per_k)
}

fn aggregate_endpoint(endpoint: &str, rows: &[Row<'_>], out: &mut Vec<MeasureScore>) {
    let wmf: Vec<&Row<'_>> =
        rows.iter().filter(|r| r.probe.spec.kind == ProbeKind::WmfAm).collect();
    let score = |measure: Measure, value: f64, n: usize| MeasureScore {
        endpoint: endpoint.to_string(),
        measure,
        value,
        n_trials: n,
        per_seed_sd: None,
    };

    let mut wmf_composite = None;
    if !wmf.is_empty() {
        let kv: Vec<(u32, f64)> = wmf.iter().map(|r| (r.probe.spec.depth, r.value)).collect();
        let composite = depth_composite(&kv);
        wmf_composite = Some(composite);

        // per-seed composites and their SD
        let mut by_seed: BTreeMap<u64, Vec<(u32, f64)>> = BTreeMap::new();
        for r in &wmf {
            by_seed.entry(r.probe.spec.seed).or_default().push((r.probe.spec.depth, r.value));
        }
        let seed_composites: Vec<(u64, f64, usize)> = by_seed
            .iter()
            .map(|(s, rows)| (*s, depth_composite(rows), rows.len()))
            .collect();
        let per_seed_sd = if seed_composites.len() >= 2 {
            let vals: Vec<f64> = seed_composites.iter().map(|(_, v, _)| *v).collect();
            let m = mean(&vals);
            Some(
                (vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (vals.len() - 1) as f64)
                    .sqrt(),
            )
        } else {
            None
        };

        out.push(MeasureScore { per_seed_sd, ..score(Measure::WmfAm, composite, wmf.len()) });

        let mut by_k: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
        for (k, v) in &kv {
            by_k.entry(*k).or_default().push(*v);
        }
        for (k, vs) in &by_k {
            out.push(score(Measure::WmfAmPerK(*k), mean(vs), vs.len()));
        }
        if seed_composites.len() >= 2 {
            for (s, v, n) in &seed_composites {
                out.push(score(Measure::PerSeed(*s), *v, *n));
            }
        }
        let mut by_wrapper: BTreeMap<String, (PromptWrapper, Vec<(u32, f64)>)> = BTreeMap::new();
        for r in &wmf {
            by_wrapper
                .entry(r.wrapper.to_string())
                .or_insert_with(|| (r.wrapper, Vec::new()))
                .1
                .push((r.probe.spec.depth, r.value));
        }
        if by_wrapper.len() >= 2 {
            for (w, rows) in by_wrapper.values() {
                out.push(score(Measure::PerWrapper(*w), depth_composite(rows), rows.len()));
            }
        }
    }

    let simple = |kind: ProbeKind| -> Option<(f64, usize)> {
        let vals: Vec<f64> =
            rows.iter().filter(|r| r.probe.spec.kind == kind).map(|r| r.value).collect();
        (!vals.is_empty()).then(|| (mean(&vals), vals.len()))
    };

    let yoked = simple(ProbeKind::YokedCancellation);
    if let Some((v, n)) = yoked {
        out.push(score(Measure::Yoked, v, n));
    }
    if let Some((v, n)) = simple(ProbeKind::NonArithmetic) {
        out.push(score(Measure::NonArith, v, n));
    }
    if let Some((v, n)) = simple(ProbeKind::SingleStepControl) {
        out.push(score(Measure::K1Control, v, n));
    }
    if let (Some(wmf_v), Some((yoked_v, yoked_n))) = (wmf_composite, yoked) {
        out.push(score(
            Measure::WmfMinusYoked,
            wmf_v - yoked_v,
            wmf.len() + yoked_n,
        ));
    }
}
