//! Orchestrates the analysis register over a score matrix.
//!
//! A [`RegisterPlan`] names the analyses: which measure predicts which
//! criterion, what gets controlled for, and which entries form the
//! pre-specified confirmatory family (those are the only ones entering the
//! multiple-testing correction). The shipped default plan is frozen;
//! `plan init` writes an editable copy.
//!
//! [`run_register`] computes every entry, applies the correction to the
//! confirmatory family, and emits an [`AnalysisReport`] in which every
//! number carries its method, inputs hash, and seed. Re-running on the same
//! inputs reproduces the report byte for byte.

mod error;
mod ksweep;
mod plan;
mod render;
mod report;
mod robustness;
mod run;

pub use error::RegisterError;
pub use ksweep::{k_sweep, KSweepRow, KSweepTable};
pub use plan::{
    default_plan, AnalysisMethod, DeltaTestSpec, EntryType, PlanEntry, RegisterPlan,
};
pub use render::{render_ksweep, render_report_table, render_scatter_svg};
pub use report::{AnalysisReport, DeltaTestResult, Provenance, RegisterEntryResult};
pub use robustness::{robustness_panel, RobustnessPanel, SeedStability, TemplatePairRow};
pub use run::run_register;

/// Format tag for plan files.
pub const PLAN_FORMAT: &str = "register-plan/v1";
/// Format tag for report files.
pub const REPORT_FORMAT: &str = "analysis-report/v1";
