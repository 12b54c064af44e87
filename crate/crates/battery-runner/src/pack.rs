use crate::error::BatteryError;
use crate::task::TaskPack;

const BUNDLED: &str = include_str!("../assets/tasks.json");

/// The ten example tasks shipped with the crate. These are artifact-authored
/// examples spanning the three categories; external packs replace them via
/// the same JSON format.
pub fn bundled_pack() -> Result<TaskPack, BatteryError> {
    TaskPack::from_str(BUNDLED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::task::TaskCategory;

    #[test]
    fn bundled_pack_validates_and_spans_all_categories() {
        let pack = bundled_pack().unwrap();
        assert_eq!(pack.tasks.len(), 10);
        for cat in [
            TaskCategory::ToolUse,
            TaskCategory::MultiStepReasoning,
            TaskCategory::StateTracking,
        ] {
            assert!(pack.tasks.iter().any(|t| t.category == cat), "missing {cat}");
        }
        // one task long enough to separate deep checkpoint budgets
        assert!(pack.tasks.iter().any(|t| t.checkpoints() >= 8));
    }
}
