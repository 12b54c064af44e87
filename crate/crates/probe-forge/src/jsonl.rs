//! Probe-set files: JSONL with a header line followed by one probe per line.
//!
//! The header records the generator version, the RNG algorithm id, and the
//! parameter block the set was produced from, so a probe set can be audited
//! or regenerated without the original process.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::ProbeError;
use crate::instance::ProbeInstance;
use crate::rng::RNG_ALGORITHM;
use crate::{GENERATOR_VERSION, PROBE_FORMAT};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeFileHeader {
    pub format: String,
    pub generator_version: String,
    pub rng_algorithm: String,
    /// Free-form parameter block (battery parameters, CLI arguments, ...).
    pub params: serde_json::Value,
    /// Hash of the run manifest this set was produced under, when any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest_hash: Option<String>,
}

impl ProbeFileHeader {
    pub fn new(params: serde_json::Value, manifest_hash: Option<String>) -> Self {
        Self {
            format: PROBE_FORMAT.to_string(),
            generator_version: GENERATOR_VERSION.to_string(),
            rng_algorithm: RNG_ALGORITHM.to_string(),
            params,
            manifest_hash,
        }
    }
}

/// One probe line: the instance plus its content id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeLine {
    pub id: String,
    #[serde(flatten)]
    pub probe: ProbeInstance,
}

pub fn write_probes<W: Write>(
    mut w: W,
    header: &ProbeFileHeader,
    probes: &[ProbeInstance],
) -> Result<(), ProbeError> {
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    for probe in probes {
        let line = ProbeLine { id: probe.id(), probe: probe.clone() };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_probes<R: BufRead>(r: R) -> Result<(ProbeFileHeader, Vec<ProbeLine>), ProbeError> {
    let mut lines = r.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| ProbeError::Format("probe file is empty".to_string()))??;
    let header: ProbeFileHeader = serde_json::from_str(&header_line)
        .map_err(|e| ProbeError::Format(format!("bad header line: {e}")))?;
    if header.format != PROBE_FORMAT {
        return Err(ProbeError::Format(format!(
            "unsupported probe format {:?} (expected {PROBE_FORMAT:?})",
            header.format
        )));
    }
    let mut probes = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: ProbeLine = serde_json::from_str(&line)
            .map_err(|e| ProbeError::Format(format!("line {}: {e}", lineno + 2)))?;
        probes.push(parsed);
    }
    Ok((header, probes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{generate_battery, BatteryParams};

    #[test]
    fn round_trips_probe_sets() {
        let mut params = BatteryParams::wmf_default(&[1]);
        params.trials_per_depth = 2;
        let probes = generate_battery(&params).unwrap();
        let header = ProbeFileHeader::new(serde_json::json!({"design": "test"}), None);

        let mut buf = Vec::new();
        write_probes(&mut buf, &header, &probes).unwrap();
        let (h, lines) = read_probes(buf.as_slice()).unwrap();

        assert_eq!(h.rng_algorithm, RNG_ALGORITHM);
        assert_eq!(lines.len(), probes.len());
        for (line, probe) in lines.iter().zip(&probes) {
            assert_eq!(&line.probe, probe);
            assert_eq!(line.id, probe.id());
        }
    }

    #[test]
    fn rejects_garbage_headers() {
        let data = b"not json\n";
        assert!(matches!(read_probes(&data[..]), Err(ProbeError::Format(_))));
    }
}
