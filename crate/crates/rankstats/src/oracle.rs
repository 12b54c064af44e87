//! Slow reference implementations used by the test suites to cross-check
//! the fast paths. Everything here is written independently of the library
//! code it checks: pair statistics come from direct O(n^2) enumeration,
//! permutations are generated in lexicographic order (the fast path uses
//! Heap's algorithm), and the bootstrap re-derives its streams from its own
//! SplitMix64 copy. Nothing in the library proper calls into this module.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tau::PairCounts;

/// Pair census by direct enumeration of all n(n-1)/2 pairs.
pub fn pair_counts_brute(x: &[f64], y: &[f64]) -> PairCounts {
    assert_eq!(x.len(), y.len());
    let mut c = PairCounts { concordant: 0, discordant: 0, tied_x: 0, tied_y: 0, tied_both: 0 };
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let dx = x[i].total_cmp(&x[j]);
            let dy = y[i].total_cmp(&y[j]);
            use std::cmp::Ordering::Equal;
            match (dx == Equal, dy == Equal) {
                (true, true) => c.tied_both += 1,
                (true, false) => c.tied_x += 1,
                (false, true) => c.tied_y += 1,
                (false, false) => {
                    if dx == dy {
                        c.concordant += 1;
                    } else {
                        c.discordant += 1;
                    }
                }
            }
        }
    }
    c
}

/// Tau-b from the brute-force census, with the same final arithmetic shape
/// as the fast path so agreement is exact in f64.
pub fn tau_b_brute(x: &[f64], y: &[f64]) -> Option<f64> {
    pair_counts_brute(x, y).tau_b()
}

fn s_brute(x: &[f64], y: &[f64]) -> i64 {
    let c = pair_counts_brute(x, y);
    c.concordant as i64 - c.discordant as i64
}

/// Exact two-sided permutation p-value via lexicographic enumeration of the
/// index permutations of y.
pub fn exact_permutation_p_brute(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let observed = s_brute(x, y).abs();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut hits = 0u64;
    let mut total = 0u64;
    loop {
        let permuted: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
        total += 1;
        if s_brute(x, &permuted).abs() >= observed {
            hits += 1;
        }
        if !next_permutation(&mut idx) {
            break;
        }
    }
    hits as f64 / total as f64
}

/// Classic lexicographic next-permutation; returns false after the last one.
fn next_permutation(idx: &mut [usize]) -> bool {
    let n = idx.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && idx[i - 1] >= idx[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while idx[j] <= idx[i - 1] {
        j -= 1;
    }
    idx.swap(i - 1, j);
    idx[i..].reverse();
    true
}

/// Independent SplitMix64 copy for the bootstrap oracle.
fn splitmix(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct BruteBootstrap {
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub used: usize,
    pub skipped: usize,
}

/// Flat percentile bootstrap mirroring the documented resampling rule
/// (ChaCha8 per-resample streams, `next_u64() mod n` index draws) but
/// computing every statistic by brute force.
pub fn bootstrap_flat_brute(x: &[f64], y: &[f64], resamples: usize, seed: u64) -> BruteBootstrap {
    let n = x.len();
    let mut taus = Vec::with_capacity(resamples);
    let mut skipped = 0usize;
    for b in 0..resamples {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed, b as u64));
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            let i = (rng.next_u64() % n as u64) as usize;
            xs.push(x[i]);
            ys.push(y[i]);
        }
        match tau_b_brute(&xs, &ys) {
            Some(t) => taus.push(t),
            None => skipped += 1,
        }
    }
    taus.sort_by(|a, b| a.total_cmp(b));
    let b = taus.len();
    let lo = taus[((0.025 * b as f64).floor() as usize).min(b - 1)];
    let hi = taus[((0.975 * b as f64).ceil() as usize).saturating_sub(1).min(b - 1)];
    BruteBootstrap { ci_lo: lo, ci_hi: hi, used: b, skipped }
}

/// Mid-ranks by counting: rank(v) = (# smaller) + (# equal + 1) / 2.
pub fn midranks_brute(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|v| {
            let smaller = values.iter().filter(|w| *w < v).count() as f64;
            let equal = values.iter().filter(|w| *w == v).count() as f64;
            smaller + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Classical single-control partial tau from brute-force taus.
pub fn partial_formula_brute(x: &[f64], y: &[f64], z: &[f64]) -> Option<f64> {
    let t_xy = tau_b_brute(x, y)?;
    let t_xz = tau_b_brute(x, z)?;
    let t_yz = tau_b_brute(y, z)?;
    let denom = ((1.0 - t_xz * t_xz) * (1.0 - t_yz * t_yz)).sqrt();
    if denom == 0.0 {
        return None;
    }
    Some((t_xy - t_xz * t_yz) / denom)
}

/// Residual-route partial tau for a single control, with the simple-
/// regression slope computed in closed form rather than via a solver.
pub fn partial_residual_brute(x: &[f64], y: &[f64], z: &[f64]) -> Option<f64> {
    let rx = midranks_brute(x);
    let ry = midranks_brute(y);
    let rz = midranks_brute(z);
    let resid = |t: &[f64]| -> Vec<f64> {
        let n = t.len() as f64;
        let mz = rz.iter().sum::<f64>() / n;
        let mt = t.iter().sum::<f64>() / n;
        let szz: f64 = rz.iter().map(|v| (v - mz) * (v - mz)).sum();
        let szt: f64 = rz.iter().zip(t).map(|(a, b)| (a - mz) * (b - mt)).sum();
        let slope = szt / szz;
        rz.iter().zip(t).map(|(a, b)| b - (mt + slope * (a - mz))).collect()
    };
    tau_b_brute(&resid(&rx), &resid(&ry))
}

/// Spearman's rho by the explicit Pearson-on-midranks definition.
pub fn spearman_brute(x: &[f64], y: &[f64]) -> Option<f64> {
    let rx = midranks_brute(x);
    let ry = midranks_brute(y);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let sxx: f64 = rx.iter().map(|v| (v - mx) * (v - mx)).sum();
    let syy: f64 = ry.iter().map(|v| (v - my) * (v - my)).sum();
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    let sxy: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    Some(sxy / (sxx * syy).sqrt())
}
