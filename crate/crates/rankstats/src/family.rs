//! Family-level sensitivity analyses: leave-one-family-out and the
//! family-median collapse.

use crate::error::StatsError;
use crate::result::CorrelationResult;
use crate::tau::{kendall_tau_b, tau_b_stat};
use crate::vector::{check_aligned, ScoreVector};

#[derive(Debug, Clone, PartialEq)]
pub struct LofoRow {
    pub family: String,
    pub tau: Option<f64>,
    pub n_remaining: usize,
    /// Set when this family's removal moves tau by more than 0.2 or leaves
    /// it undefined — a single-family dependence worth surfacing.
    pub influential: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LofoReport {
    pub full_tau: Option<f64>,
    pub rows: Vec<LofoRow>,
    pub min_tau: Option<f64>,
    pub mean_tau: Option<f64>,
    pub max_tau: Option<f64>,
}

/// Recomputes tau-b once per family with that family's endpoints removed.
pub fn leave_one_family_out(
    x: &ScoreVector,
    y: &ScoreVector,
) -> Result<LofoReport, StatsError> {
    check_aligned(x, y)?;
    if x.families() != y.families() {
        return Err(StatsError::LabelMismatch);
    }
    let families = x.distinct_families();
    if families.len() < 2 {
        return Err(StatsError::TooFewClusters { needed: 2, got: families.len() });
    }
    let full_tau = tau_b_stat(x.values(), y.values());

    let mut rows = Vec::with_capacity(families.len());
    for fam in &families {
        let keep: Vec<usize> = x
            .families()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.as_str() != *fam)
            .map(|(i, _)| i)
            .collect();
        let tau = if keep.len() >= 2 { tau_b_stat(&x.take(&keep), &y.take(&keep)) } else { None };
        let influential = match (full_tau, tau) {
            (Some(full), Some(t)) => (full - t).abs() > 0.2,
            (Some(_), None) => true,
            _ => false,
        };
        rows.push(LofoRow {
            family: (*fam).to_string(),
            tau,
            n_remaining: keep.len(),
            influential,
        });
    }

    let defined: Vec<f64> = rows.iter().filter_map(|r| r.tau).collect();
    let (min_tau, mean_tau, max_tau) = if defined.is_empty() {
        (None, None, None)
    } else {
        (
            Some(defined.iter().cloned().fold(f64::INFINITY, f64::min)),
            Some(defined.iter().sum::<f64>() / defined.len() as f64),
            Some(defined.iter().cloned().fold(f64::NEG_INFINITY, f64::max)),
        )
    };
    Ok(LofoReport { full_tau, rows, min_tau, mean_tau, max_tau })
}

/// Collapses x and y to per-family medians and correlates across families
/// (n becomes the family count). Needs at least 3 families.
pub fn family_median_tau(
    x: &ScoreVector,
    y: &ScoreVector,
) -> Result<CorrelationResult, StatsError> {
    check_aligned(x, y)?;
    if x.families() != y.families() {
        return Err(StatsError::LabelMismatch);
    }
    let families = x.distinct_families();
    if families.len() < 3 {
        return Err(StatsError::TooFewClusters { needed: 3, got: families.len() });
    }
    let mut mx = Vec::with_capacity(families.len());
    let mut my = Vec::with_capacity(families.len());
    let mut labels = Vec::with_capacity(families.len());
    for fam in &families {
        let members: Vec<usize> = x
            .families()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.as_str() == *fam)
            .map(|(i, _)| i)
            .collect();
        mx.push(median(&x.take(&members)));
        my.push(median(&y.take(&members)));
        labels.push((*fam).to_string());
    }
    let xv = ScoreVector::with_meta(mx, labels.clone(), labels.clone())?;
    let yv = ScoreVector::with_meta(my, labels.clone(), labels)?;
    let mut result = kendall_tau_b(&xv, &yv)?;
    result.flags.push("family-median collapse".to_string());
    Ok(result)
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vectors() -> (ScoreVector, ScoreVector) {
        let labels: Vec<String> = (0..6).map(|i| format!("m{i}")).collect();
        let families =
            vec!["a".into(), "a".into(), "b".into(), "b".into(), "c".into(), "c".into()];
        let x = ScoreVector::with_meta(
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            labels.clone(),
            families.clone(),
        )
        .unwrap();
        let y = ScoreVector::with_meta(
            vec![2.0, 1.0, 4.0, 3.0, 6.0, 5.0],
            labels,
            families,
        )
        .unwrap();
        (x, y)
    }

    #[test]
    fn lofo_row_cardinality() {
        let (x, y) = vectors();
        let report = leave_one_family_out(&x, &y).unwrap();
        assert_eq!(report.rows.len(), 3);
        for row in &report.rows {
            assert_eq!(row.n_remaining, 4);
        }
    }

    #[test]
    fn singleton_families_match_plain_tau() {
        let x = ScoreVector::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        let y = ScoreVector::new(vec![2.0, 1.0, 4.0, 3.0, 5.0]);
        let collapsed = family_median_tau(&x, &y).unwrap();
        let plain = kendall_tau_b(&x, &y).unwrap();
        assert_eq!(collapsed.tau, plain.tau);
        assert_eq!(collapsed.n, plain.n);
    }

    #[test]
    fn family_median_reports_family_count_as_n() {
        let (x, y) = vectors();
        let r = family_median_tau(&x, &y).unwrap();
        assert_eq!(r.n, 3);
        assert_eq!(r.tau, Some(1.0));
    }

    #[test]
    fn too_few_families_is_an_error() {
        let labels: Vec<String> = (0..4).map(|i| format!("m{i}")).collect();
        let fams = vec!["a".into(), "a".into(), "b".into(), "b".into()];
        let x = ScoreVector::with_meta(vec![1.0, 2.0, 3.0, 4.0], labels.clone(), fams.clone())
            .unwrap();
        let y = ScoreVector::with_meta(vec![1.0, 3.0, 2.0, 4.0], labels, fams).unwrap();
        assert!(matches!(
            family_median_tau(&x, &y),
            Err(StatsError::TooFewClusters { needed: 3, .. })
        ));
    }
}
