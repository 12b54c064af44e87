use crate::error::StatsError;

/// A score vector aligned to an endpoint roster.
///
/// Labels identify endpoints, family tags drive the clustered analyses.
/// A vector built with [`ScoreVector::new`] gets synthetic labels and
/// singleton families, under which the clustered analyses coincide with
/// their flat counterparts.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    values: Vec<f64>,
    labels: Vec<String>,
    families: Vec<String>,
}

impl ScoreVector {
    pub fn new(values: Vec<f64>) -> Self {
        let labels: Vec<String> = (0..values.len()).map(|i| format!("m{i}")).collect();
        let families = labels.clone();
        Self { values, labels, families }
    }

    pub fn with_meta(
        values: Vec<f64>,
        labels: Vec<String>,
        families: Vec<String>,
    ) -> Result<Self, StatsError> {
        if values.len() != labels.len() || values.len() != families.len() {
            return Err(StatsError::MetaLengthMismatch);
        }
        if let Some(i) = families.iter().position(|f| f.is_empty()) {
            return Err(StatsError::EmptyFamilyTag(i));
        }
        Ok(Self { values, labels, families })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn families(&self) -> &[String] {
        &self.families
    }

    /// Distinct families in first-appearance order.
    pub fn distinct_families(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for f in &self.families {
            if !seen.contains(&f.as_str()) {
                seen.push(f.as_str());
            }
        }
        seen
    }

    /// Subset of values at `indices` (indices may repeat, as in a bootstrap
    /// resample).
    pub fn take(&self, indices: &[usize]) -> Vec<f64> {
        indices.iter().map(|&i| self.values[i]).collect()
    }
}

/// Checks that two vectors are the same length and aligned to the same
/// roster.
pub(crate) fn check_aligned(x: &ScoreVector, y: &ScoreVector) -> Result<(), StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.labels() != y.labels() {
        return Err(StatsError::LabelMismatch);
    }
    if x.values().iter().chain(y.values()).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteInput);
    }
    Ok(())
}
