use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ProbeError;

/// Probe family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// Cumulative arithmetic tracking: answer = initial + sum of deltas.
    WmfAm,
    /// Inverse-paired operations: answer = initial state.
    YokedCancellation,
    /// Direct attribute assignment: answer = last assigned value.
    NonArithmetic,
    /// Single operation (K = 1).
    SingleStepControl,
}

impl ProbeKind {
    pub fn is_arithmetic(self) -> bool {
        !matches!(self, ProbeKind::NonArithmetic)
    }

    /// Standard depths for this kind. For `YokedCancellation`, depth counts
    /// cancelling *pairs* (the rendered prompt holds 2K operations).
    pub fn standard_depths(self) -> &'static [u32] {
        match self {
            ProbeKind::WmfAm => &[3, 5, 7],
            ProbeKind::YokedCancellation => &[2, 4, 6, 8, 12],
            ProbeKind::NonArithmetic => &[3, 5, 7],
            ProbeKind::SingleStepControl => &[1],
        }
    }

    fn tag_byte(self) -> u8 {
        match self {
            ProbeKind::WmfAm => 0,
            ProbeKind::YokedCancellation => 1,
            ProbeKind::NonArithmetic => 2,
            ProbeKind::SingleStepControl => 3,
        }
    }
}

impl fmt::Display for ProbeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProbeKind::WmfAm => "wmf_am",
            ProbeKind::YokedCancellation => "yoked_cancellation",
            ProbeKind::NonArithmetic => "non_arithmetic",
            ProbeKind::SingleStepControl => "single_step_control",
        };
        f.write_str(s)
    }
}

impl FromStr for ProbeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "wmf_am" | "wmf" => Ok(ProbeKind::WmfAm),
            "yoked_cancellation" | "yoked" => Ok(ProbeKind::YokedCancellation),
            "non_arithmetic" | "non_arith" => Ok(ProbeKind::NonArithmetic),
            "single_step_control" | "k1" => Ok(ProbeKind::SingleStepControl),
            other => Err(format!("unknown probe kind: {other}")),
        }
    }
}

/// Narrative surface the probe is rendered in.
///
/// Arithmetic kinds use `Points` / `Inventory` / `Accounts`; the
/// non-arithmetic family uses `Color` / `Location` / `Status`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceForm {
    Points,
    Inventory,
    Accounts,
    Color,
    Location,
    Status,
}

impl SurfaceForm {
    pub const ARITHMETIC: [SurfaceForm; 3] =
        [SurfaceForm::Points, SurfaceForm::Inventory, SurfaceForm::Accounts];
    pub const NON_ARITHMETIC: [SurfaceForm; 3] =
        [SurfaceForm::Color, SurfaceForm::Location, SurfaceForm::Status];

    pub fn is_arithmetic(self) -> bool {
        matches!(self, SurfaceForm::Points | SurfaceForm::Inventory | SurfaceForm::Accounts)
    }

    pub fn matches_kind(self, kind: ProbeKind) -> bool {
        self.is_arithmetic() == kind.is_arithmetic()
    }

    fn tag_byte(self) -> u8 {
        match self {
            SurfaceForm::Points => 0,
            SurfaceForm::Inventory => 1,
            SurfaceForm::Accounts => 2,
            SurfaceForm::Color => 3,
            SurfaceForm::Location => 4,
            SurfaceForm::Status => 5,
        }
    }
}

impl fmt::Display for SurfaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SurfaceForm::Points => "points",
            SurfaceForm::Inventory => "inventory",
            SurfaceForm::Accounts => "accounts",
            SurfaceForm::Color => "color",
            SurfaceForm::Location => "location",
            SurfaceForm::Status => "status",
        };
        f.write_str(s)
    }
}

impl FromStr for SurfaceForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "points" => Ok(SurfaceForm::Points),
            "inventory" => Ok(SurfaceForm::Inventory),
            "accounts" => Ok(SurfaceForm::Accounts),
            "color" => Ok(SurfaceForm::Color),
            "location" => Ok(SurfaceForm::Location),
            "status" => Ok(SurfaceForm::Status),
            other => Err(format!("unknown surface form: {other}")),
        }
    }
}

/// Natural-language paraphrase applied when rendering the prompt.
///
/// All five templates render the same operation sequence; varying the
/// template never changes the ground truth. `Minimal` strips role framing
/// and units but always keeps the final question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParaphraseTemplate {
    Original,
    Formal,
    Casual,
    Minimal,
    Verbose,
}

impl ParaphraseTemplate {
    pub const ALL: [ParaphraseTemplate; 5] = [
        ParaphraseTemplate::Original,
        ParaphraseTemplate::Formal,
        ParaphraseTemplate::Casual,
        ParaphraseTemplate::Minimal,
        ParaphraseTemplate::Verbose,
    ];
}

impl fmt::Display for ParaphraseTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParaphraseTemplate::Original => "original",
            ParaphraseTemplate::Formal => "formal",
            ParaphraseTemplate::Casual => "casual",
            ParaphraseTemplate::Minimal => "minimal",
            ParaphraseTemplate::Verbose => "verbose",
        };
        f.write_str(s)
    }
}

impl FromStr for ParaphraseTemplate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "original" => Ok(ParaphraseTemplate::Original),
            "formal" => Ok(ParaphraseTemplate::Formal),
            "casual" => Ok(ParaphraseTemplate::Casual),
            "minimal" => Ok(ParaphraseTemplate::Minimal),
            "verbose" => Ok(ParaphraseTemplate::Verbose),
            other => Err(format!("unknown paraphrase template: {other}")),
        }
    }
}

/// Depth validation policy for generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthMode {
    /// Only the per-kind standard depths are accepted.
    Standard,
    /// Any K >= 1 is accepted (depth-sweep studies).
    Sweep,
}

/// Full coordinates of one probe. The tuple
/// `(kind, depth, surface, template, seed, index, multi_entity)` determines
/// the generated instance completely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub kind: ProbeKind,
    /// Number of operations; for `YokedCancellation`, number of cancelling
    /// pairs (2·depth rendered operations).
    pub depth: u32,
    pub surface: SurfaceForm,
    pub template: ParaphraseTemplate,
    pub seed: u64,
    /// Trial index within the (kind, depth, surface, seed) block.
    pub index: u32,
    #[serde(default)]
    pub multi_entity: bool,
}

impl ProbeSpec {
    pub fn new(
        kind: ProbeKind,
        depth: u32,
        surface: SurfaceForm,
        template: ParaphraseTemplate,
        seed: u64,
        index: u32,
    ) -> Self {
        Self { kind, depth, surface, template, seed, index, multi_entity: false }
    }

    /// Checks depth and surface against the kind.
    pub fn validate(&self, mode: DepthMode) -> Result<(), ProbeError> {
        if !self.surface.matches_kind(self.kind) {
            return Err(ProbeError::InvalidSurface { kind: self.kind, surface: self.surface });
        }
        match mode {
            DepthMode::Standard => {
                if !self.kind.standard_depths().contains(&self.depth) {
                    return Err(ProbeError::InvalidDepth { kind: self.kind, depth: self.depth });
                }
            }
            DepthMode::Sweep => {
                if self.depth == 0 {
                    return Err(ProbeError::InvalidDepth { kind: self.kind, depth: self.depth });
                }
            }
        }
        Ok(())
    }

    /// Byte encoding hashed into the RNG stream. The paraphrase template is
    /// deliberately excluded so that template variants of the same spec share
    /// one operation sequence.
    pub(crate) fn stream_material(&self, entity_count: u32) -> Vec<u8> {
        let mut m = Vec::with_capacity(32);
        m.push(self.kind.tag_byte());
        m.extend_from_slice(&self.depth.to_le_bytes());
        m.push(self.surface.tag_byte());
        m.extend_from_slice(&self.seed.to_le_bytes());
        m.extend_from_slice(&self.index.to_le_bytes());
        m.push(u8::from(self.multi_entity));
        m.extend_from_slice(&entity_count.to_le_bytes());
        m
    }
}
