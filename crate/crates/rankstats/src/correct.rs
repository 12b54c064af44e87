//! Multiple-testing corrections over a labeled p-value family.

use serde::{Deserialize, Serialize};

use crate::error::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionMethod {
    Bonferroni,
    Holm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionDecision {
    pub label: String,
    pub p: f64,
    pub p_adjusted: f64,
    /// The raw-p threshold this test was compared against.
    pub threshold: f64,
    pub reject: bool,
}

/// Bonferroni: each p is compared to alpha/m, adjusted p = min(1, m*p).
/// Holm: step-down; the i-th smallest p (0-based) is compared to
/// alpha/(m-i), and the first failure retains everything after it.
/// Output order matches input order.
pub fn multiple_correction(
    p_values: &[(String, f64)],
    method: CorrectionMethod,
    alpha: f64,
) -> Result<Vec<CorrectionDecision>, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::InvalidAlpha(alpha));
    }
    let m = p_values.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    match method {
        CorrectionMethod::Bonferroni => {
            let threshold = alpha / m as f64;
            Ok(p_values
                .iter()
                .map(|(label, p)| CorrectionDecision {
                    label: label.clone(),
                    p: *p,
                    p_adjusted: (p * m as f64).min(1.0),
                    threshold,
                    reject: *p <= threshold,
                })
                .collect())
        }
        CorrectionMethod::Holm => {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| p_values[a].1.total_cmp(&p_values[b].1));
            let mut decisions = vec![None; m];
            let mut failed = false;
            let mut running_adj: f64 = 0.0;
            for (rank, &idx) in order.iter().enumerate() {
                let (label, p) = &p_values[idx];
                let threshold = alpha / (m - rank) as f64;
                if *p > threshold {
                    failed = true;
                }
                running_adj = running_adj.max(((m - rank) as f64 * p).min(1.0));
                decisions[idx] = Some(CorrectionDecision {
                    label: label.clone(),
                    p: *p,
                    p_adjusted: running_adj,
                    threshold,
                    reject: !failed,
                });
            }
            Ok(decisions.into_iter().map(|d| d.expect("all slots filled")).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(ps: &[f64]) -> Vec<(String, f64)> {
        ps.iter().enumerate().map(|(i, p)| (format!("t{i}"), *p)).collect()
    }

    #[test]
    fn bonferroni_two_primaries_at_family_alpha_05() {
        let d =
            multiple_correction(&labeled(&[0.02, 0.03]), CorrectionMethod::Bonferroni, 0.05)
                .unwrap();
        assert_eq!(d[0].threshold, 0.025);
        assert!(d[0].reject);
        assert!(!d[1].reject);
        assert!((d[0].p_adjusted - 0.04).abs() < 1e-12);
    }

    #[test]
    fn single_test_is_identity_for_both_methods() {
        for method in [CorrectionMethod::Bonferroni, CorrectionMethod::Holm] {
            let d = multiple_correction(&labeled(&[0.04]), method, 0.05).unwrap();
            assert_eq!(d[0].threshold, 0.05);
            assert_eq!(d[0].p_adjusted, 0.04);
            assert!(d[0].reject);
        }
    }

    #[test]
    fn holm_stepdown_thresholds() {
        let d = multiple_correction(&labeled(&[0.01, 0.02, 0.04]), CorrectionMethod::Holm, 0.05)
            .unwrap();
        assert!((d[0].threshold - 0.05 / 3.0).abs() < 1e-12);
        assert!((d[1].threshold - 0.025).abs() < 1e-12);
        assert!((d[2].threshold - 0.05).abs() < 1e-12);
        assert!(d.iter().all(|x| x.reject));
        assert!((d[0].p_adjusted - 0.03).abs() < 1e-12);
        assert!((d[1].p_adjusted - 0.04).abs() < 1e-12);
        assert!((d[2].p_adjusted - 0.04).abs() < 1e-12);
    }

    #[test]
    fn holm_stops_at_first_failure() {
        let d = multiple_correction(
            &labeled(&[0.001, 0.03, 0.004]),
            CorrectionMethod::Holm,
            0.05,
        )
        .unwrap();
        // sorted: 0.001 (<= 0.0167, reject), 0.004 (<= 0.025, reject),
        // 0.03 (<= 0.05, reject) — all pass here
        assert!(d.iter().all(|x| x.reject));
        let d = multiple_correction(
            &labeled(&[0.001, 0.04, 0.03]),
            CorrectionMethod::Holm,
            0.05,
        )
        .unwrap();
        // sorted: 0.001 ok; 0.03 > 0.025 fails; 0.04 retained by step-down
        assert!(d[0].reject);
        assert!(!d[1].reject);
        assert!(!d[2].reject);
    }

    #[test]
    fn bad_alpha_is_rejected() {
        assert!(matches!(
            multiple_correction(&labeled(&[0.01]), CorrectionMethod::Holm, 1.0),
            Err(StatsError::InvalidAlpha(_))
        ));
    }
}
