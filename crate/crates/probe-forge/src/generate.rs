//! Probe generation.
//!
//! Numeric ranges: initial state uniform in [10, 100], operation magnitudes
//! uniform in [1, 20]. Signs are chosen uniformly; a sign that would drive
//! the running state negative is flipped to a gain, which keeps every prefix
//! sum non-negative (inventory and account narratives stay physically
//! valid). Draw order per probe is fixed: entity pick, initial state, then
//! one (magnitude, sign) pair per operation.

use crate::error::ProbeError;
use crate::instance::ProbeInstance;
use crate::names;
use crate::rng::ProbeRng;
use crate::spec::{DepthMode, ParaphraseTemplate, ProbeKind, ProbeSpec, SurfaceForm};

const INITIAL_LO: i64 = 10;
const INITIAL_HI: i64 = 100;
const MAG_LO: i64 = 1;
const MAG_HI: i64 = 20;

/// Generates the probe for `spec` under the standard depth policy.
pub fn generate_probe(spec: &ProbeSpec) -> Result<ProbeInstance, ProbeError> {
    generate_with_mode(spec, DepthMode::Standard)
}

/// Generates the probe for `spec` accepting any depth K >= 1 (depth-sweep
/// studies).
pub fn generate_probe_sweep(spec: &ProbeSpec) -> Result<ProbeInstance, ProbeError> {
    generate_with_mode(spec, DepthMode::Sweep)
}

fn generate_with_mode(spec: &ProbeSpec, mode: DepthMode) -> Result<ProbeInstance, ProbeError> {
    spec.validate(mode)?;
    if spec.multi_entity {
        return Err(ProbeError::InvalidEntityCount(0));
    }
    let mut rng = ProbeRng::from_material(&spec.stream_material(0));
    match spec.kind {
        ProbeKind::WmfAm | ProbeKind::SingleStepControl => {
            let names = names::arithmetic_entities(spec.surface);
            let entity = names[rng.below(names.len() as u64) as usize];
            let initial = rng.range_i64(INITIAL_LO, INITIAL_HI);
            let mut deltas = Vec::with_capacity(spec.depth as usize);
            let mut running = initial;
            for _ in 0..spec.depth {
                let delta = draw_delta(&mut rng, running);
                running += delta;
                deltas.push(delta);
            }
            ProbeInstance::arithmetic(*spec, entity, initial, &deltas)
        }
        ProbeKind::YokedCancellation => {
            let names = names::arithmetic_entities(spec.surface);
            let entity = names[rng.below(names.len() as u64) as usize];
            let initial = rng.range_i64(INITIAL_LO, INITIAL_HI);
            let mut deltas = Vec::with_capacity(2 * spec.depth as usize);
            for _ in 0..spec.depth {
                let mag = rng.range_i64(MAG_LO, MAG_HI);
                deltas.push(mag);
                deltas.push(-mag);
            }
            ProbeInstance::arithmetic(*spec, entity, initial, &deltas)
        }
        ProbeKind::NonArithmetic => {
            let subject = names::attribute_subject(spec.surface);
            let values = names::attribute_values(spec.surface);
            let initial = values[rng.below(values.len() as u64) as usize];
            let mut current = initial;
            let mut assigns = Vec::with_capacity(spec.depth as usize);
            for _ in 0..spec.depth {
                // Redraw until the new value differs from the current one.
                let next = loop {
                    let v = values[rng.below(values.len() as u64) as usize];
                    if v != current {
                        break v;
                    }
                };
                assigns.push(next.to_string());
                current = next;
            }
            ProbeInstance::assignments(*spec, subject, initial, &assigns)
        }
    }
}

/// Magnitude in [1, 20] with a uniform sign; flipped to a gain when a loss
/// would drive the running state below zero.
fn draw_delta(rng: &mut ProbeRng, running: i64) -> i64 {
    let mag = rng.range_i64(MAG_LO, MAG_HI);
    let loss = rng.coin();
    if loss && running - mag >= 0 {
        -mag
    } else {
        mag
    }
}

/// Generates a multi-entity inventory probe: `entity_count` named items,
/// each operation targeting one of them. Requires `WmfAm` kind and the
/// `Inventory` surface.
pub fn generate_multi_entity(
    spec: &ProbeSpec,
    entity_count: u32,
) -> Result<ProbeInstance, ProbeError> {
    if spec.kind != ProbeKind::WmfAm || spec.surface != SurfaceForm::Inventory {
        return Err(ProbeError::InvalidSurface { kind: spec.kind, surface: spec.surface });
    }
    if !(2..=26).contains(&entity_count) {
        return Err(ProbeError::InvalidEntityCount(entity_count));
    }
    let mut spec = *spec;
    spec.multi_entity = true;
    spec.validate(DepthMode::Sweep)?;

    let mut rng = ProbeRng::from_material(&spec.stream_material(entity_count));
    let initial: Vec<(String, i64)> = (0..entity_count as usize)
        .map(|i| (names::multi_item_name(i), rng.range_i64(INITIAL_LO, INITIAL_HI)))
        .collect();
    let mut counts: Vec<i64> = initial.iter().map(|(_, v)| *v).collect();
    let mut ops = Vec::with_capacity(spec.depth as usize);
    for _ in 0..spec.depth {
        let target = rng.below(entity_count as u64) as usize;
        let delta = draw_delta(&mut rng, counts[target]);
        counts[target] += delta;
        ops.push((initial[target].0.clone(), delta));
    }
    ProbeInstance::multi_entity(spec, &initial, &ops)
}

/// Parameters for one Cartesian-product battery of probes.
#[derive(Debug, Clone)]
pub struct BatteryParams {
    pub kind: ProbeKind,
    pub depths: Vec<u32>,
    pub trials_per_depth: u32,
    pub surfaces: Vec<SurfaceForm>,
    pub templates: Vec<ParaphraseTemplate>,
    pub seeds: Vec<u64>,
    pub depth_mode: DepthMode,
}

impl BatteryParams {
    /// The main cumulative-tracking design: 15 trials/depth, K in {3, 5, 7},
    /// 4 seeds, points surface, original template (180 instances).
    pub fn wmf_default(seeds: &[u64]) -> Self {
        Self {
            kind: ProbeKind::WmfAm,
            depths: vec![3, 5, 7],
            trials_per_depth: 15,
            surfaces: vec![SurfaceForm::Points],
            templates: vec![ParaphraseTemplate::Original],
            seeds: seeds.to_vec(),
            depth_mode: DepthMode::Standard,
        }
    }

    /// The cancellation-control design: 20 trials/depth, K in
    /// {2, 4, 6, 8, 12} pairs, one seed (100 instances).
    pub fn yoked_default(seed: u64) -> Self {
        Self {
            kind: ProbeKind::YokedCancellation,
            depths: vec![2, 4, 6, 8, 12],
            trials_per_depth: 20,
            surfaces: vec![SurfaceForm::Points],
            templates: vec![ParaphraseTemplate::Original],
            seeds: vec![seed],
            depth_mode: DepthMode::Standard,
        }
    }

    /// Direct-assignment ceiling design: K in {3, 5, 7} over the three
    /// attribute surfaces.
    pub fn non_arithmetic_default(seed: u64) -> Self {
        Self {
            kind: ProbeKind::NonArithmetic,
            depths: vec![3, 5, 7],
            trials_per_depth: 5,
            surfaces: SurfaceForm::NON_ARITHMETIC.to_vec(),
            templates: vec![ParaphraseTemplate::Original],
            seeds: vec![seed],
            depth_mode: DepthMode::Standard,
        }
    }

    /// Single-step control design (K = 1).
    pub fn single_step_default(seed: u64) -> Self {
        Self {
            kind: ProbeKind::SingleStepControl,
            depths: vec![1],
            trials_per_depth: 15,
            surfaces: vec![SurfaceForm::Points],
            templates: vec![ParaphraseTemplate::Original],
            seeds: vec![seed],
            depth_mode: DepthMode::Standard,
        }
    }
}

/// Generates the full Cartesian-product block for `params` in deterministic
/// order: seed-major, then depth, surface, template, trial index.
pub fn generate_battery(params: &BatteryParams) -> Result<Vec<ProbeInstance>, ProbeError> {
    if params.depths.is_empty() {
        return Err(ProbeError::EmptyParameter("depths"));
    }
    if params.surfaces.is_empty() {
        return Err(ProbeError::EmptyParameter("surfaces"));
    }
    if params.templates.is_empty() {
        return Err(ProbeError::EmptyParameter("templates"));
    }
    if params.seeds.is_empty() {
        return Err(ProbeError::EmptyParameter("seeds"));
    }
    if params.trials_per_depth == 0 {
        return Err(ProbeError::InvalidTrialCount);
    }
    let mut out = Vec::with_capacity(
        params.seeds.len()
            * params.depths.len()
            * params.surfaces.len()
            * params.templates.len()
            * params.trials_per_depth as usize,
    );
    for &seed in &params.seeds {
        for &depth in &params.depths {
            for &surface in &params.surfaces {
                for &template in &params.templates {
                    for index in 0..params.trials_per_depth {
                        let spec = ProbeSpec {
                            kind: params.kind,
                            depth,
                            surface,
                            template,
                            seed,
                            index,
                            multi_entity: false,
                        };
                        out.push(generate_with_mode(&spec, params.depth_mode)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GroundTruth;

    fn spec(kind: ProbeKind, depth: u32, surface: SurfaceForm, seed: u64, index: u32) -> ProbeSpec {
        ProbeSpec::new(kind, depth, surface, ParaphraseTemplate::Original, seed, index)
    }

    #[test]
    fn wmf_truth_is_initial_plus_deltas() {
        let p = generate_probe(&spec(ProbeKind::WmfAm, 5, SurfaceForm::Points, 7, 0)).unwrap();
        let sum: i64 = p.deltas().unwrap().iter().sum();
        assert_eq!(p.truth_numeric().unwrap(), p.initial_numeric().unwrap() + sum);
    }

    #[test]
    fn yoked_truth_equals_initial_and_has_paired_ops() {
        let p = generate_probe(&spec(ProbeKind::YokedCancellation, 4, SurfaceForm::Accounts, 3, 2))
            .unwrap();
        assert_eq!(p.truth_numeric(), p.initial_numeric());
        let deltas = p.deltas().unwrap();
        assert_eq!(deltas.len(), 8);
        for pair in deltas.chunks(2) {
            assert_eq!(pair[0], -pair[1]);
            assert!(pair[0] > 0);
        }
    }

    #[test]
    fn non_arithmetic_truth_is_last_assignment() {
        let p = generate_probe(&spec(ProbeKind::NonArithmetic, 3, SurfaceForm::Color, 11, 4))
            .unwrap();
        let last = match p.operations.last().unwrap() {
            crate::Operation::Assign(v) => v.clone(),
            other => panic!("unexpected op {other:?}"),
        };
        assert_eq!(p.ground_truth, GroundTruth::Text(last));
    }

    #[test]
    fn generation_is_deterministic() {
        let s = spec(ProbeKind::WmfAm, 7, SurfaceForm::Inventory, 99, 13);
        assert_eq!(generate_probe(&s).unwrap(), generate_probe(&s).unwrap());
    }

    #[test]
    fn depth_outside_standard_set_is_rejected_unless_sweeping() {
        let s = spec(ProbeKind::WmfAm, 4, SurfaceForm::Points, 0, 0);
        assert!(matches!(generate_probe(&s), Err(ProbeError::InvalidDepth { .. })));
        assert!(generate_probe_sweep(&s).is_ok());
    }

    #[test]
    fn surface_kind_mismatch_is_rejected() {
        let s = spec(ProbeKind::WmfAm, 3, SurfaceForm::Color, 0, 0);
        assert!(matches!(generate_probe(&s), Err(ProbeError::InvalidSurface { .. })));
        let s = spec(ProbeKind::NonArithmetic, 3, SurfaceForm::Points, 0, 0);
        assert!(matches!(generate_probe(&s), Err(ProbeError::InvalidSurface { .. })));
    }

    #[test]
    fn default_batteries_have_design_sizes() {
        let wmf = generate_battery(&BatteryParams::wmf_default(&[0, 1, 2, 3])).unwrap();
        assert_eq!(wmf.len(), 180);
        let yoked = generate_battery(&BatteryParams::yoked_default(0)).unwrap();
        assert_eq!(yoked.len(), 100);
    }

    #[test]
    fn zero_trials_per_depth_is_an_error() {
        let mut params = BatteryParams::wmf_default(&[0]);
        params.trials_per_depth = 0;
        assert!(matches!(generate_battery(&params), Err(ProbeError::InvalidTrialCount)));
    }

    #[test]
    fn battery_order_is_seed_major() {
        let mut params = BatteryParams::wmf_default(&[5, 9]);
        params.trials_per_depth = 2;
        let probes = generate_battery(&params).unwrap();
        let seeds: Vec<u64> = probes.iter().map(|p| p.spec.seed).collect();
        let mid = probes.len() / 2;
        assert!(seeds[..mid].iter().all(|&s| s == 5));
        assert!(seeds[mid..].iter().all(|&s| s == 9));
        let depths: Vec<u32> = probes[..mid].iter().map(|p| p.spec.depth).collect();
        assert_eq!(depths, vec![3, 3, 5, 5, 7, 7]);
    }

    #[test]
    fn multi_entity_untouched_items_keep_initial_counts() {
        let s = spec(ProbeKind::WmfAm, 3, SurfaceForm::Inventory, 21, 0);
        let p = generate_multi_entity(&s, 5).unwrap();
        let initial = match &p.initial_state {
            crate::instance::InitialState::Entities(m) => m.clone(),
            other => panic!("unexpected initial state {other:?}"),
        };
        let truth = match &p.ground_truth {
            GroundTruth::Entities(m) => m.clone(),
            other => panic!("unexpected truth {other:?}"),
        };
        let touched: std::collections::BTreeSet<&str> = p
            .operations
            .iter()
            .map(|op| match op {
                crate::Operation::EntityDelta { entity, .. } => entity.as_str(),
                other => panic!("unexpected op {other:?}"),
            })
            .collect();
        for (name, v) in &initial {
            if !touched.contains(name.as_str()) {
                assert_eq!(truth[name], *v);
            }
        }
    }

    #[test]
    fn multi_entity_count_bounds() {
        let s = spec(ProbeKind::WmfAm, 3, SurfaceForm::Inventory, 0, 0);
        assert!(matches!(
            generate_multi_entity(&s, 1),
            Err(ProbeError::InvalidEntityCount(1))
        ));
        assert!(generate_multi_entity(&s, 2).is_ok());
    }
}
