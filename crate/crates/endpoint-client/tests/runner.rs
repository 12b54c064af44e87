use endpoint_client::{
    run_trials, ExtractedAnswer, ModelEndpoint, PromptWrapper, RunOptions, TrialScorer,
};
use probe_forge::{generate_battery, BatteryParams, GroundTruth, ProbeInstance};

/// Minimal trial-time scorer for these tests: correct iff the ground-truth
/// value appears verbatim in the response.
struct ContainsTruth;

impl TrialScorer for ContainsTruth {
    fn score(&self, raw: &str, probe: &ProbeInstance) -> (Option<ExtractedAnswer>, bool) {
        match &probe.ground_truth {
            GroundTruth::Numeric(v) => {
                let hit = raw.contains(&v.to_string());
                (hit.then_some(ExtractedAnswer::Int(*v)), hit)
            }
            GroundTruth::Text(v) => {
                let hit = raw.contains(v.as_str());
                (hit.then(|| ExtractedAnswer::Text(v.clone())), hit)
            }
            GroundTruth::Entities(_) => (None, false),
        }
    }
}

fn wmf_battery() -> Vec<ProbeInstance> {
    generate_battery(&BatteryParams::wmf_default(&[0, 1, 2, 3])).unwrap()
}

#[test]
fn mock_run_produces_one_ordered_record_per_probe() {
    let probes = wmf_battery();
    assert_eq!(probes.len(), 180);
    let endpoint = ModelEndpoint::mock("pt7", "mock", "perfect-tracker:7");
    let opts = RunOptions { parallelism: 8, ..RunOptions::default() };
    let outcome = run_trials(&probes, &endpoint, PromptWrapper::Bare, &opts, &ContainsTruth).unwrap();
    assert_eq!(outcome.trials.len(), 180);
    for (trial, probe) in outcome.trials.iter().zip(&probes) {
        assert_eq!(trial.probe_id, probe.id());
        assert!(trial.correct, "perfect tracker with capacity 7 answers every standard depth");
    }
    assert!(outcome.max_in_flight <= 8);
    assert!(outcome.max_in_flight >= 1);
    assert_eq!(outcome.failed_trials, 0);
}

#[test]
fn capacity_three_tracker_fails_deeper_probes() {
    let probes = wmf_battery();
    let endpoint = ModelEndpoint::mock("pt3", "mock", "perfect-tracker:3");
    let outcome =
        run_trials(&probes, &endpoint, PromptWrapper::Bare, &RunOptions::default(), &ContainsTruth)
            .unwrap();
    for (trial, probe) in outcome.trials.iter().zip(&probes) {
        assert_eq!(trial.correct, probe.spec.depth <= 3, "depth {}", probe.spec.depth);
    }
}

#[test]
fn mock_runs_are_byte_stable_apart_from_timing() {
    let probes = wmf_battery();
    let endpoint = ModelEndpoint::mock("rp", "mock", "random-plausible:5");
    let opts = RunOptions { parallelism: 6, ..RunOptions::default() };
    let a = run_trials(&probes, &endpoint, PromptWrapper::Chat, &opts, &ContainsTruth).unwrap();
    let b = run_trials(&probes, &endpoint, PromptWrapper::Chat, &opts, &ContainsTruth).unwrap();
    let stable = |trials: &[endpoint_client::TrialRecord]| -> Vec<String> {
        trials.iter().map(|t| serde_json::to_string(&t.stable()).unwrap()).collect()
    };
    assert_eq!(stable(&a.trials), stable(&b.trials));
}

#[test]
fn parallelism_gauge_never_exceeds_the_budget() {
    let probes = wmf_battery();
    for parallelism in [1usize, 3] {
        let endpoint = ModelEndpoint::mock("pt", "mock", "perfect-tracker:7");
        let opts = RunOptions { parallelism, ..RunOptions::default() };
        let outcome =
            run_trials(&probes, &endpoint, PromptWrapper::Bare, &opts, &ContainsTruth).unwrap();
        assert!(outcome.max_in_flight <= parallelism);
    }
}

#[test]
fn zero_parallelism_is_rejected() {
    let probes = wmf_battery();
    let endpoint = ModelEndpoint::mock("pt", "mock", "perfect-tracker:7");
    let opts = RunOptions { parallelism: 0, ..RunOptions::default() };
    assert!(run_trials(&probes, &endpoint, PromptWrapper::Bare, &opts, &ContainsTruth).is_err());
}
