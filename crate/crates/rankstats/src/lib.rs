//! Rank statistics for small model rosters.
//!
//! Everything here is built around Kendall's tau-b with tie correction in
//! both margins, because the score vectors this crate sees are short (tens
//! of entries) and full of ties:
//!
//! * [`kendall_tau_b`] — tau-b with an exact permutation p-value for
//!   n <= 10 and the tie-corrected normal approximation above that.
//! * [`partial_tau`] — partial rank correlation, either the classical
//!   single-control formula or rank-regression residualization (any number
//!   of controls).
//! * [`bootstrap_ci`] / [`delta_tau_test`] — seeded percentile bootstrap,
//!   flat or clustered by model family, and the paired predictor-difference
//!   test.
//! * [`leave_one_family_out`] / [`family_median_tau`] — family-level
//!   sensitivity analyses.
//! * [`multiple_correction`] — Bonferroni and Holm.
//!
//! A constant input vector leaves tau undefined; that state is carried as
//! `None` in [`CorrelationResult`] rather than a NaN, and renders as
//! "undef" downstream.
//!
//! The [`oracle`] module holds deliberately slow reference implementations
//! (pair enumeration, lexicographic permutation scans, a second bootstrap)
//! used by the test suites to cross-check the fast paths. Nothing in the
//! library calls into it.

mod bootstrap;
mod correct;
mod delta;
mod error;
mod family;
pub mod oracle;
mod partial;
mod pvalue;
mod rank;
mod result;
mod spearman;
mod tau;
mod vector;

pub use bootstrap::{bootstrap_ci, BootstrapCi, Clustering};
pub use correct::{multiple_correction, CorrectionDecision, CorrectionMethod};
pub use delta::{delta_tau_test, DeltaTauResult};
pub use error::StatsError;
pub use family::{family_median_tau, leave_one_family_out, LofoReport, LofoRow};
pub use partial::{partial_tau, partial_tau_opts, PartialMethod, PartialOptions};
pub use pvalue::{exact_permutation_p, normal_approx_p};
pub use rank::midranks;
pub use result::{CorrelationResult, Method};
pub use spearman::{pearson_r, spearman_rho};
pub use tau::{kendall_tau_b, tau_b_stat, PairCounts};
pub use vector::ScoreVector;
