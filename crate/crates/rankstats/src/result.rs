use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    TauB,
    Spearman,
    PearsonR,
    PartialFormula,
    PartialResidual,
}

/// Outcome of a correlation analysis.
///
/// `tau` and `p_value` are `None` when the statistic is undefined — an input
/// vector with fewer than two distinct values leaves every pair tied, so the
/// rank correlation carries no information. Downstream renderers print
/// "undef" for that state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub method: Method,
    pub tau: Option<f64>,
    pub p_value: Option<f64>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_hi: Option<f64>,
    /// Number of control vectors (partial methods only).
    #[serde(default, skip_serializing_if = "is_zero")]
    pub n_controls: usize,
    /// Method notes, e.g. which p-value route was taken.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl CorrelationResult {
    pub(crate) fn undefined(method: Method, n: usize) -> Self {
        Self {
            method,
            tau: None,
            p_value: None,
            n,
            ci_lo: None,
            ci_hi: None,
            n_controls: 0,
            flags: vec!["undefined: input has fewer than 2 distinct values".to_string()],
        }
    }

    pub fn is_defined(&self) -> bool {
        self.tau.is_some()
    }

    /// "0.612" or "undef".
    pub fn tau_display(&self) -> String {
        match self.tau {
            Some(t) => format!("{t:.3}"),
            None => "undef".to_string(),
        }
    }

    /// "0.022", "<0.001", or "undef".
    pub fn p_display(&self) -> String {
        match self.p_value {
            Some(p) if p < 0.001 => "<0.001".to_string(),
            Some(p) => format!("{p:.3}"),
            None => "undef".to_string(),
        }
    }
}
