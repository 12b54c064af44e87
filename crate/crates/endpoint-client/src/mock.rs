//! Deterministic mock models.
//!
//! Each behavior computes its answer from the probe itself, so entire runs
//! are reproducible byte for byte. Capacities mimic a depth budget: a
//! tracker with capacity D answers correctly iff the probe depth K <= D.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use probe_forge::{names, GroundTruth, Operation, ProbeInstance, ProbeKind};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MockBehavior {
    /// Correct iff K <= capacity, else a deterministic wrong answer.
    PerfectTracker { capacity: u32 },
    /// Applies only the final operation to the initial state.
    LastOpOnly,
    /// A plausible but arbitrary answer derived from (seed, probe id).
    RandomPlausible { seed: u64 },
    /// The PerfectTracker answer buried in prose with trailing distractor
    /// numbers, so last-number extraction misses it.
    VerboseEmbedder { capacity: u32 },
    /// Tracks cumulative updates but never notices cancellation: correct on
    /// plain probes, answers yoked probes as if only the first member of
    /// each pair applied.
    CancellationBlind,
}

impl MockBehavior {
    /// One-line descriptions for `mock list`.
    pub fn catalog() -> Vec<(&'static str, &'static str)> {
        vec![
            ("perfect-tracker:<D>", "correct iff probe depth K <= D"),
            ("last-op-only", "applies only the final operation to the initial state"),
            ("random-plausible:<seed>", "deterministic arbitrary answer near the initial state"),
            (
                "verbose-embedder:<D>",
                "perfect-tracker answer wrapped in prose with trailing distractor numbers",
            ),
            ("cancellation-blind", "correct on plain probes, ignores the cancelling member of yoked pairs"),
        ]
    }
}

impl fmt::Display for MockBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MockBehavior::PerfectTracker { capacity } => write!(f, "perfect-tracker:{capacity}"),
            MockBehavior::LastOpOnly => write!(f, "last-op-only"),
            MockBehavior::RandomPlausible { seed } => write!(f, "random-plausible:{seed}"),
            MockBehavior::VerboseEmbedder { capacity } => write!(f, "verbose-embedder:{capacity}"),
            MockBehavior::CancellationBlind => write!(f, "cancellation-blind"),
        }
    }
}

impl FromStr for MockBehavior {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let need_u32 = |a: Option<&str>| -> Result<u32, String> {
            a.ok_or_else(|| format!("{head} needs a numeric argument"))?
                .parse()
                .map_err(|_| format!("bad argument in {s:?}"))
        };
        match head {
            "perfect-tracker" => Ok(MockBehavior::PerfectTracker { capacity: need_u32(arg)? }),
            "last-op-only" => Ok(MockBehavior::LastOpOnly),
            "random-plausible" => Ok(MockBehavior::RandomPlausible {
                seed: arg
                    .ok_or_else(|| "random-plausible needs a seed".to_string())?
                    .parse()
                    .map_err(|_| format!("bad seed in {s:?}"))?,
            }),
            "verbose-embedder" => Ok(MockBehavior::VerboseEmbedder { capacity: need_u32(arg)? }),
            "cancellation-blind" => Ok(MockBehavior::CancellationBlind),
            other => Err(format!("unknown mock behavior {other:?}")),
        }
    }
}

/// What a mock would say: one of the ground-truth shapes.
#[derive(Debug, Clone, PartialEq)]
enum Answer {
    Numeric(i64),
    Text(String),
    Entities(BTreeMap<String, i64>),
}

impl Answer {
    fn correct(probe: &ProbeInstance) -> Self {
        match &probe.ground_truth {
            GroundTruth::Numeric(v) => Answer::Numeric(*v),
            GroundTruth::Text(v) => Answer::Text(v.clone()),
            GroundTruth::Entities(m) => Answer::Entities(m.clone()),
        }
    }

    /// A deterministic answer that never equals the ground truth.
    fn wrong(probe: &ProbeInstance) -> Self {
        match &probe.ground_truth {
            GroundTruth::Numeric(v) => Answer::Numeric(v + 1),
            GroundTruth::Text(v) => {
                let values = names::attribute_values(probe.spec.surface);
                let other = values.iter().find(|w| **w != v.as_str()).unwrap_or(&values[0]);
                Answer::Text((*other).to_string())
            }
            GroundTruth::Entities(m) => {
                Answer::Entities(m.iter().map(|(k, v)| (k.clone(), v + 1)).collect())
            }
        }
    }

    fn render(&self) -> String {
        match self {
            Answer::Numeric(v) => format!("The final answer is {v}."),
            Answer::Text(v) => format!("The final answer is {v}."),
            Answer::Entities(m) => {
                let listing =
                    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ");
                format!("The final counts are {listing}.")
            }
        }
    }
}

/// Deterministic response text for `behavior` on `probe`.
pub fn mock_respond(behavior: MockBehavior, probe: &ProbeInstance) -> String {
    match behavior {
        MockBehavior::PerfectTracker { capacity } => {
            let answer = if probe.spec.depth <= capacity {
                Answer::correct(probe)
            } else {
                Answer::wrong(probe)
            };
            answer.render()
        }
        MockBehavior::LastOpOnly => last_op_answer(probe).render(),
        MockBehavior::RandomPlausible { seed } => {
            let answer = plausible_answer(seed, probe);
            format!("I think the answer is {answer}.")
        }
        MockBehavior::VerboseEmbedder { capacity } => {
            let stated = if probe.spec.depth <= capacity {
                Answer::correct(probe)
            } else {
                Answer::wrong(probe)
            };
            match stated {
                Answer::Numeric(v) => format!(
                    "Let me talk through this carefully. Walking the updates one at a time, \
                     the running value settles at {v}. As a sanity check, an upper bound of \
                     {} and a stale reading of {} both rule out wild outliers.",
                    v + 3,
                    v + 7
                ),
                other => format!(
                    "Let me talk through this carefully. {} I re-checked the sequence twice \
                     and found no inconsistencies, so my confidence is roughly 9 out of 10.",
                    other.render()
                ),
            }
        }
        MockBehavior::CancellationBlind => {
            if probe.spec.kind == ProbeKind::YokedCancellation {
                let initial = probe.initial_numeric().unwrap_or(0);
                let gains: i64 = probe
                    .operations
                    .iter()
                    .filter_map(|op| match op {
                        Operation::Delta(d) if *d > 0 => Some(*d),
                        _ => None,
                    })
                    .sum();
                Answer::Numeric(initial + gains).render()
            } else {
                Answer::correct(probe).render()
            }
        }
    }
}

/// Initial state with only the final operation applied.
fn last_op_answer(probe: &ProbeInstance) -> Answer {
    match (&probe.ground_truth, probe.operations.last()) {
        (GroundTruth::Numeric(_), Some(Operation::Delta(d))) => {
            Answer::Numeric(probe.initial_numeric().unwrap_or(0) + d)
        }
        (GroundTruth::Text(_), Some(Operation::Assign(v))) => Answer::Text(v.clone()),
        (GroundTruth::Entities(_), Some(Operation::EntityDelta { entity, delta })) => {
            match &probe.initial_state {
                probe_forge::InitialState::Entities(m) => {
                    let mut out = m.clone();
                    if let Some(slot) = out.get_mut(entity) {
                        *slot += delta;
                    }
                    Answer::Entities(out)
                }
                _ => Answer::wrong(probe),
            }
        }
        _ => Answer::wrong(probe),
    }
}

fn plausible_answer(seed: u64, probe: &ProbeInstance) -> String {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(probe.id().as_bytes());
    let digest = hasher.finalize();
    let h = u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"));
    match &probe.ground_truth {
        GroundTruth::Numeric(_) => {
            let initial = probe.initial_numeric().unwrap_or(50);
            let offset = (h % 41) as i64 - 20;
            format!("{}", (initial + offset).max(0))
        }
        GroundTruth::Text(_) => {
            let values = names::attribute_values(probe.spec.surface);
            values[(h % values.len() as u64) as usize].to_string()
        }
        GroundTruth::Entities(m) => m
            .iter()
            .enumerate()
            .map(|(i, (k, v))| {
                let offset = ((h.rotate_left(i as u32 * 8)) % 21) as i64 - 10;
                format!("{k}={}", (v + offset).max(0))
            })
            .collect::<Vec<_>>()
            .join(", "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use probe_forge::{ParaphraseTemplate, ProbeSpec, SurfaceForm};

    fn points_probe() -> ProbeInstance {
        let spec = ProbeSpec::new(
            ProbeKind::WmfAm,
            3,
            SurfaceForm::Points,
            ParaphraseTemplate::Original,
            0,
            0,
        );
        ProbeInstance::arithmetic(spec, "Alice", 10, &[5, -3, 7]).unwrap()
    }

    fn yoked_probe() -> ProbeInstance {
        let spec = ProbeSpec::new(
            ProbeKind::YokedCancellation,
            3,
            SurfaceForm::Points,
            ParaphraseTemplate::Original,
            0,
            0,
        );
        ProbeInstance::arithmetic(spec, "Alice", 10, &[5, -5, 3, -3, 7, -7]).unwrap()
    }

    #[test]
    fn perfect_tracker_respects_capacity() {
        let p = points_probe();
        assert!(mock_respond(MockBehavior::PerfectTracker { capacity: 7 }, &p).contains("19"));
        assert!(!mock_respond(MockBehavior::PerfectTracker { capacity: 2 }, &p).contains("19"));
    }

    #[test]
    fn last_op_only_adds_the_final_delta() {
        let p = points_probe();
        assert!(mock_respond(MockBehavior::LastOpOnly, &p).contains("17"));
    }

    #[test]
    fn cancellation_blind_sums_first_pair_members() {
        let y = yoked_probe();
        // 10 + 5 + 3 + 7
        assert!(mock_respond(MockBehavior::CancellationBlind, &y).contains("25"));
        let p = points_probe();
        assert!(mock_respond(MockBehavior::CancellationBlind, &p).contains("19"));
    }

    #[test]
    fn verbose_embedder_buries_the_answer_before_distractors() {
        let p = points_probe();
        let text = mock_respond(MockBehavior::VerboseEmbedder { capacity: 7 }, &p);
        assert!(text.contains("19"));
        assert!(text.contains("22") && text.contains("26"));
        let pos_answer = text.find("19").unwrap();
        let pos_last = text.rfind("26").unwrap();
        assert!(pos_answer < pos_last);
    }

    #[test]
    fn random_plausible_is_deterministic() {
        let p = points_probe();
        let a = mock_respond(MockBehavior::RandomPlausible { seed: 9 }, &p);
        let b = mock_respond(MockBehavior::RandomPlausible { seed: 9 }, &p);
        assert_eq!(a, b);
        let c = mock_respond(MockBehavior::RandomPlausible { seed: 10 }, &p);
        assert_ne!(a, c);
    }

    #[test]
    fn behavior_ids_round_trip() {
        for id in [
            "perfect-tracker:7",
            "last-op-only",
            "random-plausible:42",
            "verbose-embedder:3",
            "cancellation-blind",
        ] {
            let parsed: MockBehavior = id.parse().unwrap();
            assert_eq!(parsed.to_string(), id);
        }
        assert!("tracker".parse::<MockBehavior>().is_err());
        assert!("perfect-tracker".parse::<MockBehavior>().is_err());
    }
}
