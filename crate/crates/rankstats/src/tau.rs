//! Kendall's tau-b via the merge-sort inversion count (Knight's algorithm),
//! O(n log n). The test suites check it pair-for-pair against the O(n^2)
//! enumeration in [`crate::oracle`].

use crate::error::StatsError;
use crate::pvalue;
use crate::result::{CorrelationResult, Method};
use crate::vector::{check_aligned, ScoreVector};

/// Pair census over all n(n-1)/2 index pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub concordant: u64,
    pub discordant: u64,
    /// Tied in x only.
    pub tied_x: u64,
    /// Tied in y only.
    pub tied_y: u64,
    /// Tied in both.
    pub tied_both: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.concordant + self.discordant + self.tied_x + self.tied_y + self.tied_both
    }

    /// S = C - D.
    pub fn s(&self) -> i64 {
        self.concordant as i64 - self.discordant as i64
    }

    /// Tau-b, or `None` when a margin is entirely tied.
    pub fn tau_b(&self) -> Option<f64> {
        let denom_x = self.concordant + self.discordant + self.tied_x;
        let denom_y = self.concordant + self.discordant + self.tied_y;
        if denom_x == 0 || denom_y == 0 {
            return None;
        }
        Some(self.s() as f64 / ((denom_x as f64) * (denom_y as f64)).sqrt())
    }
}

/// Computes the pair census with a sort + merge rather than pair
/// enumeration. Sorting by (x, y) makes y-inversions exactly the discordant
/// pairs; tie runs give the tied-pair counts.
pub(crate) fn pair_counts(x: &[f64], y: &[f64]) -> PairCounts {
    let n = x.len();
    debug_assert_eq!(n, y.len());
    let n_pairs = (n as u64) * (n as u64 - 1) / 2;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then_with(|| y[a].total_cmp(&y[b])));

    // Tie runs in x, and joint (x, y) runs inside them.
    let mut tied_x_all = 0u64; // tied in x (including tied in both)
    let mut tied_both = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let run = (j - i + 1) as u64;
        tied_x_all += run * (run - 1) / 2;
        let mut a = i;
        while a <= j {
            let mut b = a;
            while b + 1 <= j && y[order[b + 1]] == y[order[a]] {
                b += 1;
            }
            let joint = (b - a + 1) as u64;
            tied_both += joint * (joint - 1) / 2;
            a = b + 1;
        }
        i = j + 1;
    }

    // Merge sort the y sequence, counting inversions. The sort key above made
    // equal-x blocks ascending in y, so no inversion involves an x-tied pair;
    // the stable `<=` merge skips y-ties. Inversions are therefore exactly
    // the discordant pairs.
    let mut ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let mut buf = ys.clone();
    let mut discordant = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut a, mut b, mut out) = (lo, mid, lo);
            while a < mid || b < hi {
                if a < mid && (b >= hi || ys[a] <= ys[b]) {
                    buf[out] = ys[a];
                    a += 1;
                } else {
                    buf[out] = ys[b];
                    b += 1;
                    discordant += (mid - a) as u64;
                }
                out += 1;
            }
            lo = hi;
        }
        std::mem::swap(&mut ys, &mut buf);
        width *= 2;
    }

    // Tie runs in y on the now fully y-sorted sequence.
    let mut tied_y_all = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && ys[j + 1] == ys[i] {
            j += 1;
        }
        let run = (j - i + 1) as u64;
        tied_y_all += run * (run - 1) / 2;
        i = j + 1;
    }

    let tied_x = tied_x_all - tied_both;
    let tied_y = tied_y_all - tied_both;
    let mixed = n_pairs - tied_x - tied_y - tied_both; // concordant + discordant
    PairCounts {
        concordant: mixed - discordant,
        discordant,
        tied_x,
        tied_y,
        tied_both,
    }
}

/// Tau-b alone, for hot paths (bootstrap resamples) that do not need a
/// p-value. `None` when a margin is constant.
pub fn tau_b_stat(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    pair_counts(x, y).tau_b()
}

/// Kendall's tau-b with a p-value: exact permutation enumeration for
/// n <= 10, the tie-corrected normal approximation (with continuity
/// correction) above that.
pub fn kendall_tau_b(x: &ScoreVector, y: &ScoreVector) -> Result<CorrelationResult, StatsError> {
    check_aligned(x, y)?;
    let n = x.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: n });
    }
    let counts = pair_counts(x.values(), y.values());
    let Some(tau) = counts.tau_b() else {
        return Ok(CorrelationResult::undefined(Method::TauB, n));
    };
    let (p, route) = if n <= pvalue::EXACT_PERMUTATION_MAX_N {
        (pvalue::exact_permutation_p(x.values(), y.values()), "p=exact-permutation")
    } else {
        (pvalue::normal_approx_p(x.values(), y.values(), &counts, n), "p=normal-approx")
    };
    Ok(CorrelationResult {
        method: Method::TauB,
        tau: Some(tau),
        p_value: Some(p),
        n,
        ci_lo: None,
        ci_hi: None,
        n_controls: 0,
        flags: vec![route.to_string()],
    })
}
