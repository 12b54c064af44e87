//! Deterministic, seed-parameterized generation of state-tracking probes.
//!
//! A probe presents an initial state, a sequence of updates, and a final
//! question. Four families are supported:
//!
//! * `WmfAm` — cumulative arithmetic tracking: K signed deltas applied to a
//!   running total; the answer is the final total.
//! * `YokedCancellation` — every operation is immediately followed by its
//!   inverse, so the answer equals the initial state while the arithmetic
//!   parsing demand stays identical.
//! * `NonArithmetic` — direct attribute assignments (color / location /
//!   status); the answer is the last assigned value.
//! * `SingleStepControl` — a single operation (K = 1), separating single-step
//!   arithmetic from cumulative tracking.
//!
//! Generation is a pure function of [`ProbeSpec`]: the same spec always
//! yields a byte-identical [`ProbeInstance`] on every platform. Randomness
//! comes from a ChaCha8 stream keyed by a SHA-256 hash of the spec fields
//! (see [`rng`]), so instances can be regenerated independently from the
//! recorded parameters alone.

mod error;
mod generate;
mod instance;
pub mod jsonl;
pub mod names;
mod render;
pub mod rng;
mod spec;

pub use error::ProbeError;
pub use generate::{
    generate_battery, generate_multi_entity, generate_probe, generate_probe_sweep, BatteryParams,
};
pub use instance::{GroundTruth, InitialState, Operation, ProbeInstance};
pub use spec::{DepthMode, ParaphraseTemplate, ProbeKind, ProbeSpec, SurfaceForm};

/// Format tag written into probe-file headers.
pub const PROBE_FORMAT: &str = "probes/v1";

/// Generator version recorded in probe-file headers.
pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");
