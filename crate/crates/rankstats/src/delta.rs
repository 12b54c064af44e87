//! Paired bootstrap test for the difference between two predictors'
//! correlations with a shared criterion.

use rand_chacha::rand_core::RngCore;

use crate::bootstrap::{percentile_95, resample_rng};
use crate::error::StatsError;
use crate::tau::tau_b_stat;
use crate::vector::{check_aligned, ScoreVector};

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTauResult {
    /// Observed tau(x1, y) - tau(x2, y).
    pub delta_tau: f64,
    pub tau_x1: f64,
    pub tau_x2: f64,
    /// Two-sided bootstrap p: 2 * min(P(delta <= 0), P(delta >= 0)),
    /// clamped to [0, 1].
    pub p_value: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub resamples_used: usize,
    pub skipped_undefined: usize,
}

pub fn delta_tau_test(
    x1: &ScoreVector,
    x2: &ScoreVector,
    y: &ScoreVector,
    resamples: usize,
    seed: u64,
) -> Result<DeltaTauResult, StatsError> {
    check_aligned(x1, y)?;
    check_aligned(x2, y)?;
    if resamples == 0 {
        return Err(StatsError::InvalidResamples);
    }
    let n = y.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: n });
    }
    let tau_x1 = tau_b_stat(x1.values(), y.values())
        .ok_or(StatsError::UndefinedStatistic("tau(x1, y)"))?;
    let tau_x2 = tau_b_stat(x2.values(), y.values())
        .ok_or(StatsError::UndefinedStatistic("tau(x2, y)"))?;

    let mut deltas = Vec::with_capacity(resamples);
    let mut skipped = 0usize;
    let mut indices = Vec::with_capacity(n);
    for b in 0..resamples {
        let mut rng = resample_rng(seed, b as u64);
        indices.clear();
        for _ in 0..n {
            indices.push((rng.next_u64() % n as u64) as usize);
        }
        let ys = y.take(&indices);
        let t1 = tau_b_stat(&x1.take(&indices), &ys);
        let t2 = tau_b_stat(&x2.take(&indices), &ys);
        match (t1, t2) {
            (Some(a), Some(b)) => deltas.push(a - b),
            _ => skipped += 1,
        }
    }
    if deltas.is_empty() {
        return Err(StatsError::NoDefinedResamples);
    }

    let used = deltas.len() as f64;
    let le = deltas.iter().filter(|&&d| d <= 0.0).count() as f64 / used;
    let ge = deltas.iter().filter(|&&d| d >= 0.0).count() as f64 / used;
    let p = (2.0 * le.min(ge)).clamp(0.0, 1.0);
    deltas.sort_by(|a, b| a.total_cmp(b));
    let (lo, hi) = percentile_95(&deltas);
    Ok(DeltaTauResult {
        delta_tau: tau_x1 - tau_x2,
        tau_x1,
        tau_x2,
        p_value: p,
        ci_lo: lo,
        ci_hi: hi,
        resamples_used: deltas.len(),
        skipped_undefined: skipped,
    })
}
