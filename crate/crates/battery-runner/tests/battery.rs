use battery_runner::{
    battery_responder, bundled_pack, run_battery, run_task, BatteryError, BatteryTask,
    Checkpoint, MatchRule, MockTaskResponder, Responder, ScriptedResponder, Step, TaskCategory,
};
use endpoint_client::{MockBehavior, ModelEndpoint, PromptWrapper, RunOptions};

fn four_checkpoint_task() -> BatteryTask {
    bundled_pack().unwrap().tasks.iter().find(|t| t.id == "tank-level").unwrap().clone()
}

#[test]
fn three_of_four_checkpoints_score_three_quarters() {
    let task = four_checkpoint_task();
    assert_eq!(task.checkpoints(), 4);
    let mut responder = ScriptedResponder::new(vec!["90", "135", "75", "wrong"]);
    let outcome = run_task(&task, &mut responder).unwrap();
    assert_eq!(outcome.score, 0.75);
    assert_eq!(outcome.passed, 3);
    assert_eq!(outcome.total, 4);
}

#[test]
fn all_correct_scores_one_and_silence_scores_zero() {
    let task = four_checkpoint_task();
    let mut perfect = ScriptedResponder::new(vec!["90", "135", "75", "90"]);
    assert_eq!(run_task(&task, &mut perfect).unwrap().score, 1.0);
    let mut mute = ScriptedResponder::new(Vec::<String>::new());
    assert_eq!(run_task(&task, &mut mute).unwrap().score, 0.0);
}

#[test]
fn transcripts_and_abs_are_deterministic_across_runs() {
    let pack = bundled_pack().unwrap();
    let endpoint = ModelEndpoint::mock("pt5", "mock", "perfect-tracker:5");
    let run = || {
        run_battery(&pack.tasks, |task| {
            battery_responder(&endpoint, PromptWrapper::Bare, &RunOptions::default(), task)
        })
        .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.abs, b.abs);
    assert_eq!(
        serde_json::to_string(&a.tasks).unwrap(),
        serde_json::to_string(&b.tasks).unwrap()
    );
}

#[test]
fn task_order_does_not_change_per_task_scores() {
    let pack = bundled_pack().unwrap();
    let endpoint = ModelEndpoint::mock("pt3", "mock", "perfect-tracker:3");
    let score_map = |tasks: &[BatteryTask]| -> std::collections::BTreeMap<String, f64> {
        run_battery(tasks, |task| {
            battery_responder(&endpoint, PromptWrapper::Bare, &RunOptions::default(), task)
        })
        .unwrap()
        .tasks
        .into_iter()
        .map(|t| (t.task_id, t.score))
        .collect()
    };
    let forward = score_map(&pack.tasks);
    let mut reversed_tasks = pack.tasks.clone();
    reversed_tasks.reverse();
    let reversed = score_map(&reversed_tasks);
    assert_eq!(forward, reversed);
}

#[test]
fn checkpoint_budget_makes_abs_strictly_monotone_in_capacity() {
    let pack = bundled_pack().unwrap();
    let mut last = -1.0;
    for capacity in 1..=8u32 {
        let behavior = MockBehavior::PerfectTracker { capacity };
        let outcome = run_battery(&pack.tasks, |task| {
            Ok(Box::new(MockTaskResponder::new(behavior, task)) as Box<dyn Responder>)
        })
        .unwrap();
        assert!(
            outcome.abs > last,
            "capacity {capacity}: abs {} did not increase past {last}",
            outcome.abs
        );
        last = outcome.abs;
    }
    // capacity 8 clears every bundled checkpoint
    assert_eq!(last, 1.0);
}

#[test]
fn text_checkpoints_normalize_before_comparing() {
    let pack = bundled_pack().unwrap();
    let door = pack.tasks.iter().find(|t| t.id == "door-log").unwrap();
    let mut responder = ScriptedResponder::new(vec!["Unlocked.", "LOCKED", " unlocked "]);
    let outcome = run_task(door, &mut responder).unwrap();
    assert_eq!(outcome.score, 1.0);
}

#[test]
fn malformed_tasks_are_rejected() {
    let no_checkpoints = BatteryTask {
        id: "broken".to_string(),
        category: TaskCategory::ToolUse,
        steps: vec![Step::ToolCall { tool: "calc".to_string(), args: Default::default() }],
    };
    assert!(matches!(no_checkpoints.validate(), Err(BatteryError::MalformedTask { .. })));

    let bad_tool = BatteryTask {
        id: "broken2".to_string(),
        category: TaskCategory::ToolUse,
        steps: vec![
            Step::ToolCall { tool: "rocket".to_string(), args: Default::default() },
            Step::Prompt {
                text: "x".to_string(),
                checkpoint: Checkpoint { expect: "1".to_string(), rule: MatchRule::Number },
            },
        ],
    };
    assert!(matches!(bad_tool.validate(), Err(BatteryError::MalformedTask { .. })));

    let bad_expect = BatteryTask {
        id: "broken3".to_string(),
        category: TaskCategory::ToolUse,
        steps: vec![Step::Prompt {
            text: "x".to_string(),
            checkpoint: Checkpoint { expect: "many".to_string(), rule: MatchRule::Number },
        }],
    };
    assert!(matches!(bad_expect.validate(), Err(BatteryError::MalformedTask { .. })));
}

#[test]
fn pack_round_trips_through_json() {
    let pack = bundled_pack().unwrap();
    let text = serde_json::to_string_pretty(&pack).unwrap();
    let back = battery_runner::TaskPack::from_str(&text).unwrap();
    assert_eq!(back, pack);
}
