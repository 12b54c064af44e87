//! Seeded percentile bootstrap for tau-b.
//!
//! Resample b draws its own ChaCha8 generator from `splitmix64(seed, b)`,
//! so results are identical no matter how the resamples are scheduled.
//! Indices are drawn as `next_u64() mod n`; the test oracle mirrors this
//! rule exactly. Resamples whose tau is undefined (a constant margin after
//! resampling) are skipped and counted.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::StatsError;
use crate::tau::tau_b_stat;
use crate::vector::{check_aligned, ScoreVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clustering {
    /// Resample endpoints with replacement.
    None,
    /// Resample family tags with replacement, taking every member of each
    /// drawn family each time it is drawn (natural cluster sizes).
    ByFamily,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapCi {
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean: f64,
    pub sd: f64,
    pub resamples_requested: usize,
    /// Resamples that produced a defined tau.
    pub resamples_used: usize,
    pub skipped_undefined: usize,
    /// Mean resample size (varies under family clustering).
    pub mean_sample_n: f64,
}

/// SplitMix64 step, used to derive one independent stream seed per
/// resample index.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn resample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

/// 95% percentile bootstrap CI for tau-b(x, y).
pub fn bootstrap_ci(
    x: &ScoreVector,
    y: &ScoreVector,
    resamples: usize,
    clustering: Clustering,
    seed: u64,
) -> Result<BootstrapCi, StatsError> {
    check_aligned(x, y)?;
    if resamples == 0 {
        return Err(StatsError::InvalidResamples);
    }
    let n = x.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: n });
    }

    let family_members: Option<Vec<Vec<usize>>> = match clustering {
        Clustering::None => None,
        Clustering::ByFamily => {
            if x.families() != y.families() {
                return Err(StatsError::LabelMismatch);
            }
            let distinct = x.distinct_families();
            if distinct.len() < 2 {
                return Err(StatsError::TooFewClusters { needed: 2, got: distinct.len() });
            }
            Some(
                distinct
                    .iter()
                    .map(|fam| {
                        x.families()
                            .iter()
                            .enumerate()
                            .filter(|(_, f)| f.as_str() == *fam)
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect(),
            )
        }
    };

    let mut taus = Vec::with_capacity(resamples);
    let mut skipped = 0usize;
    let mut total_sample_n = 0usize;
    let mut indices: Vec<usize> = Vec::with_capacity(n);
    for b in 0..resamples {
        let mut rng = resample_rng(seed, b as u64);
        indices.clear();
        match &family_members {
            None => {
                for _ in 0..n {
                    indices.push((rng.next_u64() % n as u64) as usize);
                }
            }
            Some(members) => {
                let f = members.len() as u64;
                for _ in 0..members.len() {
                    let pick = (rng.next_u64() % f) as usize;
                    indices.extend_from_slice(&members[pick]);
                }
            }
        }
        total_sample_n += indices.len();
        match tau_b_stat(&x.take(&indices), &y.take(&indices)) {
            Some(t) => taus.push(t),
            None => skipped += 1,
        }
    }
    if taus.is_empty() {
        return Err(StatsError::NoDefinedResamples);
    }

    taus.sort_by(|a, b| a.total_cmp(b));
    let (lo, hi) = percentile_95(&taus);
    let used = taus.len();
    let mean = taus.iter().sum::<f64>() / used as f64;
    let sd = if used > 1 {
        (taus.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (used - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(BootstrapCi {
        ci_lo: lo,
        ci_hi: hi,
        mean,
        sd,
        resamples_requested: resamples,
        resamples_used: used,
        skipped_undefined: skipped,
        mean_sample_n: total_sample_n as f64 / resamples as f64,
    })
}

/// Percentile endpoints on a sorted slice: floor(0.025 B) and
/// ceil(0.975 B) - 1.
pub(crate) fn percentile_95(sorted: &[f64]) -> (f64, f64) {
    let b = sorted.len();
    let lo_idx = ((0.025 * b as f64).floor() as usize).min(b - 1);
    let hi_idx = ((0.975 * b as f64).ceil() as usize).saturating_sub(1).min(b - 1);
    (sorted[lo_idx], sorted[hi_idx])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_data_pins_the_interval_at_one() {
        let x = ScoreVector::new((0..20).map(|i| i as f64).collect());
        let y = ScoreVector::new((0..20).map(|i| (i * 3) as f64).collect());
        let ci = bootstrap_ci(&x, &y, 500, Clustering::None, 7).unwrap();
        assert_eq!((ci.ci_lo, ci.ci_hi), (1.0, 1.0));
    }

    #[test]
    fn seeded_runs_are_identical() {
        let x = ScoreVector::new(vec![1.0, 5.0, 3.0, 9.0, 2.0, 8.0, 4.0, 7.0]);
        let y = ScoreVector::new(vec![2.0, 4.0, 3.0, 8.0, 1.0, 9.0, 5.0, 6.0]);
        let a = bootstrap_ci(&x, &y, 1000, Clustering::None, 42).unwrap();
        let b = bootstrap_ci(&x, &y, 1000, Clustering::None, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn clustered_needs_two_families() {
        let x = ScoreVector::with_meta(
            vec![1.0, 2.0, 3.0],
            vec!["a".into(), "b".into(), "c".into()],
            vec!["f".into(), "f".into(), "f".into()],
        )
        .unwrap();
        assert!(matches!(
            bootstrap_ci(&x, &x.clone(), 10, Clustering::ByFamily, 0),
            Err(StatsError::TooFewClusters { .. })
        ));
    }

    #[test]
    fn undefined_resamples_are_skipped_and_counted() {
        // y nearly constant: only one distinct pair value, so most resamples
        // that repeat the common value go undefined.
        let x = ScoreVector::new(vec![1.0, 2.0, 3.0, 4.0]);
        let y = ScoreVector::new(vec![0.0, 0.0, 0.0, 1.0]);
        let ci = bootstrap_ci(&x, &y, 200, Clustering::None, 3).unwrap();
        assert!(ci.skipped_undefined > 0);
        assert_eq!(ci.resamples_used + ci.skipped_undefined, 200);
    }
}
