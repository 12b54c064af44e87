//! Spearman's rho (mid-rank ties) and Pearson's r, with t-distribution
//! p-values on n - 2 degrees of freedom.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::StatsError;
use crate::rank::midranks;
use crate::result::{CorrelationResult, Method};
use crate::vector::{check_aligned, ScoreVector};

pub fn spearman_rho(x: &ScoreVector, y: &ScoreVector) -> Result<CorrelationResult, StatsError> {
    check_aligned(x, y)?;
    let n = x.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: n });
    }
    let rx = midranks(x.values());
    let ry = midranks(y.values());
    match pearson_value(&rx, &ry) {
        Some(rho) => Ok(build(Method::Spearman, rho, n)),
        None => Ok(CorrelationResult::undefined(Method::Spearman, n)),
    }
}

pub fn pearson_r(x: &ScoreVector, y: &ScoreVector) -> Result<CorrelationResult, StatsError> {
    check_aligned(x, y)?;
    let n = x.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints { needed: 2, got: n });
    }
    match pearson_value(x.values(), y.values()) {
        Some(r) => Ok(build(Method::PearsonR, r, n)),
        None => Ok(CorrelationResult::undefined(Method::PearsonR, n)),
    }
}

fn build(method: Method, r: f64, n: usize) -> CorrelationResult {
    CorrelationResult {
        method,
        tau: Some(r),
        p_value: t_test_p(r, n),
        n,
        ci_lo: None,
        ci_hi: None,
        n_controls: 0,
        flags: vec!["p=t-approx(df=n-2)".to_string()],
    }
}

/// `None` when either margin is constant.
fn pearson_value(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Two-sided p from t = r sqrt((n-2)/(1-r^2)); `None` when df < 1.
fn t_test_p(r: f64, n: usize) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let df = (n - 2) as f64;
    let denom = 1.0 - r * r;
    if denom < 1e-15 {
        return Some(0.0);
    }
    let t = r * (df / denom).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("valid t distribution");
    Some((2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_nonlinear_data_split_the_two_statistics() {
        let x = ScoreVector::new((1..=10).map(|v| v as f64).collect());
        let y = ScoreVector::new((1..=10).map(|v| (v as f64).exp()).collect());
        let s = spearman_rho(&x, &y).unwrap();
        let p = pearson_r(&x, &y).unwrap();
        assert_eq!(s.tau, Some(1.0));
        assert!(p.tau.unwrap() < 1.0);
    }

    #[test]
    fn identical_vectors_give_unity() {
        let x = ScoreVector::new(vec![3.0, 1.0, 2.0, 5.0]);
        assert_eq!(spearman_rho(&x, &x).unwrap().tau, Some(1.0));
        assert_eq!(pearson_r(&x, &x).unwrap().tau, Some(1.0));
    }

    #[test]
    fn constant_input_is_undefined() {
        let x = ScoreVector::new(vec![2.0, 2.0, 2.0]);
        let y = ScoreVector::new(vec![1.0, 2.0, 3.0]);
        assert_eq!(spearman_rho(&x, &y).unwrap().tau, None);
        assert_eq!(pearson_r(&x, &y).unwrap().tau, None);
    }
}
