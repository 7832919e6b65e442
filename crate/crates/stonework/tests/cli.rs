use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_stonework")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

#[test]
fn reparam_depth_three_has_eight_leaves() {
    let (code, tree) = run(&["reparam", "--depth", "3"]);
    assert_eq!(code, 0);
    assert_eq!(tree["schema"], "stonework/tree/1");
    assert_eq!(tree["leaves"], 8);
    assert_eq!(tree["orbit"].as_array().unwrap().len(), 8);
    assert_eq!(tree["involutions"].as_array().unwrap().len(), 3);
    let points: usize = tree["involutions"][0]["pieces"].as_array().unwrap().iter().map(|p| p["points"].as_array().unwrap().len()).sum();
    assert_eq!(points, 8);
}

#[test]
fn tower_reports_dimensions() {
    let (code, report) = run(&["tower", "--max-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["schema"], "stonework/report/1");
    assert_eq!(report["suites"][0]["data"]["dimensions"], serde_json::json!([4, 16]));
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn every_check_carries_an_anchor() {
    let (code, report) = run(&["verify", "--depth", "3", "--mode", "float"]);
    assert_eq!(code, 0);
    for suite in report["suites"].as_array().unwrap() {
        assert!(!suite["anchor"].as_str().unwrap().is_empty());
        for check in suite["checks"].as_array().unwrap() {
            assert!(!check["anchor"].as_str().unwrap().is_empty());
            assert!(["pass", "fail", "open-evidence"].contains(&check["status"].as_str().unwrap()));
        }
    }
}

#[test]
fn suites_can_be_selected() {
    let (code, report) = run(&["groupoid", "--n", "2", "--suite", "diagonal-masa,normalizer"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["diagonal-masa", "normalizer"]);
}

#[test]
fn config_errors_exit_with_two() {
    assert_eq!(run(&["groupoid", "--n", "9"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(run(&["space-audit", "--space", "other"]).0, 2);
    assert_eq!(run(&["unknown"]).0, 2);
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("stonework-cli-{}.json", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_stonework"))
        .args(["space-audit", "--n", "20", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(report["config"]["command"], "space-audit");
    assert_eq!(report["summary"]["open-evidence"], 1);
}

#[test]
fn seeds_change_samples_but_not_verdicts() {
    let (_, a) = run(&["groupoid", "--n", "1", "--seed", "1", "--dump", "--suite", "groupoid-laws"]);
    let (_, b) = run(&["groupoid", "--n", "1", "--seed", "2", "--dump", "--suite", "groupoid-laws"]);
    assert_ne!(a["suites"][0]["data"]["transcript"], b["suites"][0]["data"]["transcript"]);
    assert_eq!(a["summary"], b["summary"]);
}
