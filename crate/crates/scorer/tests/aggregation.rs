use endpoint_client::{run_trials, ModelEndpoint, PromptWrapper, RunOptions};
use probe_forge::{
    generate_battery, generate_probe, BatteryParams, ParaphraseTemplate, ProbeInstance,
    ProbeKind, ProbeSpec, SurfaceForm,
};
use scorer::{score_trials, ExtractionMode, Extractor, Measure, ProbeIndex};

fn run_mock(
    probes: &[probe_forge::ProbeInstance],
    name: &str,
    behavior: &str,
    wrapper: PromptWrapper,
) -> Vec<endpoint_client::TrialRecord> {
    let endpoint = ModelEndpoint::mock(name, "mockfam", behavior);
    let extractor = Extractor::new(ExtractionMode::StrictLastNumber);
    run_trials(probes, &endpoint, wrapper, &RunOptions::default(), &extractor)
        .unwrap()
        .trials
}

fn find(
    scores: &[scorer::MeasureScore],
    endpoint: &str,
    measure: Measure,
) -> Option<scorer::MeasureScore> {
    scores.iter().find(|s| s.endpoint == endpoint && s.measure == measure).cloned()
}

#[test]
fn perfect_tracker_aces_the_default_battery() {
    let probes = generate_battery(&BatteryParams::wmf_default(&[0, 1, 2, 3])).unwrap();
    let trials = run_mock(&probes, "pt7", "perfect-tracker:7", PromptWrapper::Bare);
    let index = ProbeIndex::new(&probes);
    let scores = score_trials(&trials, &index, ExtractionMode::StrictLastNumber).unwrap();
    let composite = find(&scores, "pt7", Measure::WmfAm).unwrap();
    assert_eq!(composite.value, 1.0);
    assert_eq!(composite.n_trials, 180);
    assert!(composite.per_seed_sd.is_some(), "four seeds were aggregated");
    assert_eq!(composite.per_seed_sd.unwrap(), 0.0);
}

#[test]
fn capacity_three_composite_is_exactly_one_third() {
    let probes = generate_battery(&BatteryParams::wmf_default(&[0, 1, 2, 3])).unwrap();
    let trials = run_mock(&probes, "pt3", "perfect-tracker:3", PromptWrapper::Bare);
    let index = ProbeIndex::new(&probes);
    let scores = score_trials(&trials, &index, ExtractionMode::StrictLastNumber).unwrap();
    assert_eq!(find(&scores, "pt3", Measure::WmfAm).unwrap().value, 1.0 / 3.0);
    assert_eq!(find(&scores, "pt3", Measure::WmfAmPerK(3)).unwrap().value, 1.0);
    assert_eq!(find(&scores, "pt3", Measure::WmfAmPerK(5)).unwrap().value, 0.0);
    assert_eq!(find(&scores, "pt3", Measure::WmfAmPerK(7)).unwrap().value, 0.0);
}

#[test]
fn last_op_only_accuracy_matches_the_counted_oracle() {
    // oracle first: over the generated set, last-op-only is right exactly
    // when the non-final deltas cancel
    let mut probes = Vec::new();
    for seed in 0..34u64 {
        for &depth in &[3u32, 5, 7] {
            for index in 0..10u32 {
                let spec = ProbeSpec::new(
                    ProbeKind::WmfAm,
                    depth,
                    SurfaceForm::Points,
                    ParaphraseTemplate::Original,
                    seed,
                    index,
                );
                probes.push(generate_probe(&spec).unwrap());
                if probes.len() == 1000 {
                    break;
                }
            }
        }
    }
    let probes: Vec<_> = probes.into_iter().take(1000).collect();
    assert_eq!(probes.len(), 1000);
    let oracle_hits = probes
        .iter()
        .filter(|p| {
            let deltas = p.deltas().unwrap();
            deltas[..deltas.len() - 1].iter().sum::<i64>() == 0
        })
        .count();
    let oracle_acc = oracle_hits as f64 / probes.len() as f64;
    assert!(oracle_acc < 0.05, "resampled positive-prefix draws rarely cancel, got {oracle_acc}");

    let trials = run_mock(&probes, "loo", "last-op-only", PromptWrapper::Bare);
    let index = ProbeIndex::new(&probes);
    let scores = score_trials(&trials, &index, ExtractionMode::StrictLastNumber).unwrap();
    let overall = trials
        .iter()
        .map(|t| {
            let p = index.get(&t.probe_id).unwrap();
            scorer::trial_value(t, p, ExtractionMode::StrictLastNumber)
        })
        .sum::<f64>()
        / trials.len() as f64;
    assert_eq!(overall, oracle_acc);
    // the composite weights depths equally, so compare per-depth oracles
    let per_k_oracle = |k: u32| -> f64 {
        let block: Vec<&probe_forge::ProbeInstance> =
            probes.iter().filter(|p| p.spec.depth == k).collect();
        block
            .iter()
            .filter(|p| {
                let deltas = p.deltas().unwrap();
                deltas[..deltas.len() - 1].iter().sum::<i64>() == 0
            })
            .count() as f64
            / block.len() as f64
    };
    let expected_composite = (per_k_oracle(3) + per_k_oracle(5) + per_k_oracle(7)) / 3.0;
    let composite = find(&scores, "loo", Measure::WmfAm).unwrap();
    assert!((composite.value - expected_composite).abs() < 1e-12);
}

#[test]
fn contains_correct_dominates_strict_on_random_mock_sets() {
    let behaviors = [
        "perfect-tracker:5",
        "last-op-only",
        "random-plausible:7",
        "verbose-embedder:5",
        "cancellation-blind",
    ];
    let mut checked_sets = 0;
    for set in 0..200u64 {
        let behavior = behaviors[(set % 5) as usize];
        let mut params = BatteryParams::wmf_default(&[set]);
        params.trials_per_depth = 2;
        params.surfaces = vec![SurfaceForm::ARITHMETIC[(set % 3) as usize]];
        let probes = generate_battery(&params).unwrap();
        let trials = run_mock(&probes, "m", behavior, PromptWrapper::Bare);
        let index = ProbeIndex::new(&probes);
        let acc = |mode: ExtractionMode| -> f64 {
            trials
                .iter()
                .map(|t| scorer::trial_value(t, index.get(&t.probe_id).unwrap(), mode))
                .sum::<f64>()
                / trials.len() as f64
        };
        let strict = acc(ExtractionMode::StrictLastNumber);
        let contains = acc(ExtractionMode::ContainsCorrect);
        assert!(
            contains >= strict,
            "set {set} ({behavior}): contains {contains} < strict {strict}"
        );
        checked_sets += 1;
    }
    assert_eq!(checked_sets, 200);
}

#[test]
fn verbose_embedder_splits_the_extraction_modes() {
    let probes = generate_battery(&BatteryParams::wmf_default(&[0])).unwrap();
    let trials = run_mock(&probes, "ve", "verbose-embedder:7", PromptWrapper::Bare);
    let index = ProbeIndex::new(&probes);
    let strict = score_trials(&trials, &index, ExtractionMode::StrictLastNumber).unwrap();
    let contains = score_trials(&trials, &index, ExtractionMode::ContainsCorrect).unwrap();
    assert_eq!(find(&strict, "ve", Measure::WmfAm).unwrap().value, 0.0);
    assert_eq!(find(&contains, "ve", Measure::WmfAm).unwrap().value, 1.0);
}

#[test]
fn yoked_separation_between_tracker_and_cancellation_blind() {
    let probes = generate_battery(&BatteryParams::yoked_default(0)).unwrap();
    assert_eq!(probes.len(), 100);
    let index = ProbeIndex::new(&probes);

    let blind = run_mock(&probes, "cb", "cancellation-blind", PromptWrapper::Bare);
    let scores = score_trials(&blind, &index, ExtractionMode::StrictLastNumber).unwrap();
    assert_eq!(find(&scores, "cb", Measure::Yoked).unwrap().value, 0.0);

    let tracker = run_mock(&probes, "pt12", "perfect-tracker:12", PromptWrapper::Bare);
    let scores = score_trials(&tracker, &index, ExtractionMode::StrictLastNumber).unwrap();
    assert_eq!(find(&scores, "pt12", Measure::Yoked).unwrap().value, 1.0);
}

#[test]
fn wmf_minus_yoked_residual_direction() {
    let mut probes = generate_battery(&BatteryParams::wmf_default(&[0])).unwrap();
    probes.extend(generate_battery(&BatteryParams::yoked_default(0)).unwrap());
    let index = ProbeIndex::new(&probes);

    let mut trials = run_mock(&probes, "cb", "cancellation-blind", PromptWrapper::Bare);
    trials.extend(run_mock(&probes, "pt12", "perfect-tracker:12", PromptWrapper::Bare));
    let scores = score_trials(&trials, &index, ExtractionMode::StrictLastNumber).unwrap();

    // cancellation-blind: perfect on cumulative probes, floor on yoked
    let cb = find(&scores, "cb", Measure::WmfMinusYoked).unwrap();
    assert_eq!(cb.value, 1.0);
    // a true tracker with enough capacity shows no residual
    let pt = find(&scores, "pt12", Measure::WmfMinusYoked).unwrap();
    assert_eq!(pt.value, 0.0);
}

#[test]
fn per_wrapper_rows_appear_only_with_multiple_wrappers() {
    let mut params = BatteryParams::wmf_default(&[0]);
    params.trials_per_depth = 3;
    let probes = generate_battery(&params).unwrap();
    let index = ProbeIndex::new(&probes);

    let solo = run_mock(&probes, "m", "perfect-tracker:5", PromptWrapper::Bare);
    let scores = score_trials(&solo, &index, ExtractionMode::StrictLastNumber).unwrap();
    assert!(find(&scores, "m", Measure::PerWrapper(PromptWrapper::Bare)).is_none());

    let mut both = solo.clone();
    both.extend(run_mock(&probes, "m", "perfect-tracker:5", PromptWrapper::Chat));
    let scores = score_trials(&both, &index, ExtractionMode::StrictLastNumber).unwrap();
    assert!(find(&scores, "m", Measure::PerWrapper(PromptWrapper::Bare)).is_some());
    assert!(find(&scores, "m", Measure::PerWrapper(PromptWrapper::Chat)).is_some());
}

#[test]
fn multi_entity_trials_score_by_item_mean() {
    let spec = ProbeSpec::new(
        ProbeKind::WmfAm,
        3,
        SurfaceForm::Inventory,
        ParaphraseTemplate::Original,
        0,
        0,
    );
    let initial = vec![
        ("Widget".to_string(), 50),
        ("Gadget".to_string(), 30),
        ("Sprocket".to_string(), 20),
    ];
    let ops = vec![
        ("Widget".to_string(), -10),
        ("Gadget".to_string(), 25),
        ("Sprocket".to_string(), -5),
    ];
    let probe = ProbeInstance::multi_entity(spec, &initial, &ops).unwrap();
    let extractor = Extractor::new(ExtractionMode::StrictLastNumber);
    assert_eq!(extractor.value("Widget=40, Gadget=55, Sprocket=15", &probe), 1.0);
    let two_thirds = extractor.value("Widget=40, Gadget=55, Sprocket=99", &probe);
    assert!((two_thirds - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(extractor.value("no counts here", &probe), 0.0);
}

#[test]
fn unknown_probe_refs_are_rejected() {
    let probes = generate_battery(&BatteryParams::wmf_default(&[0])).unwrap();
    let mut trials = run_mock(&probes, "m", "perfect-tracker:5", PromptWrapper::Bare);
    trials[0].probe_id = "deadbeef00000000".to_string();
    let index = ProbeIndex::new(&probes[1..]);
    assert!(matches!(
        score_trials(&trials, &index, ExtractionMode::StrictLastNumber),
        Err(scorer::ScoreError::UnknownProbeRef(_))
    ));
}
