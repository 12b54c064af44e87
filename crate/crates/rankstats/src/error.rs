use thiserror::Error;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("vectors carry different endpoint labels; inputs are misaligned")]
    LabelMismatch,
    #[error("need at least {needed} data points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("labels, families, and values must have equal lengths")]
    MetaLengthMismatch,
    #[error("family tag for entry {0} is empty")]
    EmptyFamilyTag(usize),
    #[error("control vector is constant; cannot residualize on it")]
    DegenerateControl,
    #[error("formula method undefined: a control correlation has magnitude 1")]
    FormulaOutOfRange,
    #[error("formula method takes exactly one control, got {0}")]
    ControlCount(usize),
    #[error("need at least one control vector")]
    NoControls,
    #[error("need at least {needed} distinct families, got {got}")]
    TooFewClusters { needed: usize, got: usize },
    #[error("resample count must be >= 1")]
    InvalidResamples,
    #[error("every bootstrap resample left the statistic undefined")]
    NoDefinedResamples,
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    #[error("statistic undefined on the observed data: {0}")]
    UndefinedStatistic(&'static str),
    #[error("input contains a non-finite value")]
    NonFiniteInput,
}
