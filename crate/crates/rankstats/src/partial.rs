//! Partial rank correlation.
//!
//! Two routes are implemented and reported side by side downstream, since
//! their agreement is itself a robustness check:
//!
//! * `Formula` — the classical single-control identity
//!   tau_xy.z = (tau_xy - tau_xz * tau_yz) / sqrt((1 - tau_xz^2)(1 - tau_yz^2)).
//!   No p-value is attached; there is no standard exact test for it.
//! * `Residual` (default) — mid-rank-transform every vector, least-squares
//!   residualize the x-ranks and y-ranks on the control ranks plus an
//!   intercept, and take tau-b of the residual pairs. The p-value comes from
//!   the ordinary tau-b machinery on the residuals; `df_adjusted` shrinks
//!   the effective n by the control count in that computation.

use crate::error::StatsError;
use crate::rank::midranks;
use crate::result::{CorrelationResult, Method};
use crate::tau::{kendall_tau_b, pair_counts};
use crate::pvalue;
use crate::vector::{check_aligned, ScoreVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialMethod {
    Formula,
    Residual,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PartialOptions {
    /// Reduce the effective n by the number of controls when computing the
    /// residual-route p-value.
    pub df_adjusted: bool,
}

pub fn partial_tau(
    x: &ScoreVector,
    y: &ScoreVector,
    controls: &[ScoreVector],
    method: PartialMethod,
) -> Result<CorrelationResult, StatsError> {
    partial_tau_opts(x, y, controls, method, PartialOptions::default())
}

pub fn partial_tau_opts(
    x: &ScoreVector,
    y: &ScoreVector,
    controls: &[ScoreVector],
    method: PartialMethod,
    opts: PartialOptions,
) -> Result<CorrelationResult, StatsError> {
    check_aligned(x, y)?;
    if controls.is_empty() {
        return Err(StatsError::NoControls);
    }
    for z in controls {
        check_aligned(x, z)?;
        if is_constant(z.values()) {
            return Err(StatsError::DegenerateControl);
        }
    }
    match method {
        PartialMethod::Formula => {
            if controls.len() != 1 {
                return Err(StatsError::ControlCount(controls.len()));
            }
            formula_partial(x, y, &controls[0])
        }
        PartialMethod::Residual => residual_partial(x, y, controls, opts),
    }
}

fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

fn formula_partial(
    x: &ScoreVector,
    y: &ScoreVector,
    z: &ScoreVector,
) -> Result<CorrelationResult, StatsError> {
    let n = x.len();
    let txy = kendall_tau_b(x, y)?;
    let Some(t_xy) = txy.tau else {
        return Ok(CorrelationResult { n_controls: 1, ..CorrelationResult::undefined(Method::PartialFormula, n) });
    };
    let t_xz = kendall_tau_b(x, z)?.tau.ok_or(StatsError::DegenerateControl)?;
    let t_yz = kendall_tau_b(y, z)?.tau.ok_or(StatsError::DegenerateControl)?;
    let denom_sq = (1.0 - t_xz * t_xz) * (1.0 - t_yz * t_yz);
    if denom_sq <= 0.0 {
        return Err(StatsError::FormulaOutOfRange);
    }
    Ok(CorrelationResult {
        method: Method::PartialFormula,
        tau: Some((t_xy - t_xz * t_yz) / denom_sq.sqrt()),
        p_value: None,
        n,
        ci_lo: None,
        ci_hi: None,
        n_controls: 1,
        flags: vec!["no p-value for the formula route".to_string()],
    })
}

fn residual_partial(
    x: &ScoreVector,
    y: &ScoreVector,
    controls: &[ScoreVector],
    opts: PartialOptions,
) -> Result<CorrelationResult, StatsError> {
    let n = x.len();
    let k = controls.len();
    if n < k + 2 {
        return Err(StatsError::TooFewPoints { needed: k + 2, got: n });
    }
    let control_ranks: Vec<Vec<f64>> = controls.iter().map(|z| midranks(z.values())).collect();
    let rx = residualize(&midranks(x.values()), &control_ranks)?;
    let ry = residualize(&midranks(y.values()), &control_ranks)?;

    let mut flags = vec![format!("controls={k}")];
    // A residual vector with no variation left (e.g. the predictor was one
    // of the controls) carries zero association by construction.
    if near_constant(&rx) || near_constant(&ry) {
        flags.push("residuals constant; partial association is zero".to_string());
        return Ok(CorrelationResult {
            method: Method::PartialResidual,
            tau: Some(0.0),
            p_value: Some(1.0),
            n,
            ci_lo: None,
            ci_hi: None,
            n_controls: k,
            flags,
        });
    }

    let counts = pair_counts(&rx, &ry);
    let Some(tau) = counts.tau_b() else {
        return Ok(CorrelationResult { n_controls: k, ..CorrelationResult::undefined(Method::PartialResidual, n) });
    };
    let n_eff = if opts.df_adjusted { n.saturating_sub(k) } else { n };
    let p = if n <= pvalue::EXACT_PERMUTATION_MAX_N {
        flags.push("p=exact-permutation".to_string());
        pvalue::exact_permutation_p(&rx, &ry)
    } else {
        flags.push(if opts.df_adjusted {
            format!("p=normal-approx(df-adjusted n={n_eff})")
        } else {
            "p=normal-approx".to_string()
        });
        pvalue::normal_approx_p(&rx, &ry, &counts, n_eff)
    };
    Ok(CorrelationResult {
        method: Method::PartialResidual,
        tau: Some(tau),
        p_value: Some(p),
        n,
        ci_lo: None,
        ci_hi: None,
        n_controls: k,
        flags,
    })
}

fn near_constant(values: &[f64]) -> bool {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (hi - lo).abs() < 1e-9
}

/// Least-squares residuals of `target` on the control columns plus an
/// intercept, via the normal equations and Gaussian elimination with
/// partial pivoting (the systems here are at most a handful of unknowns).
fn residualize(target: &[f64], controls: &[Vec<f64>]) -> Result<Vec<f64>, StatsError> {
    let n = target.len();
    let k = controls.len() + 1; // intercept first
    let design: Vec<Vec<f64>> = (0..n)
        .map(|row| {
            let mut r = Vec::with_capacity(k);
            r.push(1.0);
            for c in controls {
                r.push(c[row]);
            }
            r
        })
        .collect();

    // normal equations: (X^T X) beta = X^T t
    let mut a = vec![vec![0.0; k + 1]; k];
    for (i, arow) in a.iter_mut().enumerate() {
        for j in 0..k {
            arow[j] = design.iter().map(|r| r[i] * r[j]).sum();
        }
        arow[k] = design.iter().zip(target).map(|(r, t)| r[i] * t).sum();
    }

    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .expect("non-empty system");
        if a[pivot_row][col].abs() < 1e-9 {
            return Err(StatsError::DegenerateControl);
        }
        a.swap(col, pivot_row);
        for row in 0..k {
            if row != col {
                let f = a[row][col] / a[col][col];
                for j in col..=k {
                    a[row][j] -= f * a[col][j];
                }
            }
        }
    }
    let beta: Vec<f64> = (0..k).map(|i| a[i][k] / a[i][i]).collect();

    Ok((0..n)
        .map(|row| target[row] - design[row].iter().zip(&beta).map(|(d, b)| d * b).sum::<f64>())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_equal_to_predictor_zeroes_the_partial() {
        let x = ScoreVector::new(vec![3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.3, 5.8]);
        let y = ScoreVector::new(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let r = partial_tau(&x, &y, &[x.clone()], PartialMethod::Residual).unwrap();
        assert_eq!(r.tau, Some(0.0));
        assert_eq!(r.p_value, Some(1.0));
    }

    #[test]
    fn constant_control_is_rejected() {
        let x = ScoreVector::new(vec![1.0, 2.0, 3.0, 4.0]);
        let y = ScoreVector::new(vec![2.0, 1.0, 4.0, 3.0]);
        let z = ScoreVector::new(vec![7.0, 7.0, 7.0, 7.0]);
        for method in [PartialMethod::Formula, PartialMethod::Residual] {
            assert!(matches!(
                partial_tau(&x, &y, &[z.clone()], method),
                Err(StatsError::DegenerateControl)
            ));
        }
    }

    #[test]
    fn formula_needs_exactly_one_control() {
        let x = ScoreVector::new(vec![1.0, 2.0, 3.0, 4.0]);
        let y = ScoreVector::new(vec![2.0, 1.0, 4.0, 3.0]);
        let z = ScoreVector::new(vec![1.0, 3.0, 2.0, 4.0]);
        assert!(matches!(
            partial_tau(&x, &y, &[z.clone(), z.clone()], PartialMethod::Formula),
            Err(StatsError::ControlCount(2))
        ));
    }

    #[test]
    fn formula_out_of_range_when_control_duplicates_predictor() {
        let x = ScoreVector::new(vec![1.0, 2.0, 3.0, 4.0]);
        let y = ScoreVector::new(vec![2.0, 1.0, 4.0, 3.0]);
        assert!(matches!(
            partial_tau(&x, &y, &[x.clone()], PartialMethod::Formula),
            Err(StatsError::FormulaOutOfRange)
        ));
    }
}
