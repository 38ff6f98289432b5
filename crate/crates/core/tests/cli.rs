use std::path::Path;
use std::process::{Command, Output};

use teamup::arena::emit::read_trace;

fn teamup(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teamup"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

#[test]
fn match_writes_one_record_per_stage() {
    let dir = tempfile::tempdir().unwrap();
    let out = teamup(&["match", "--seed", "3", "--out", "run"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let records = read_trace(&dir.path().join("run/trace.jsonl")).unwrap();
    assert_eq!(records.len(), 100);
    assert!(records.iter().enumerate().all(|(i, r)| r.stage == i + 1));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("run/match.json")).unwrap())
            .unwrap();
    assert_eq!(report["stages"], 100);
    assert_eq!(report["planner"], 0);

    let replay = teamup(&["replay", "run/trace.jsonl"], dir.path());
    assert!(replay.status.success());
    assert!(String::from_utf8_lossy(&replay.stdout).starts_with("ok: 100 stages"));
}

#[test]
fn tampered_trace_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    assert!(
        teamup(&["match", "--stages", "20", "--out", "run"], dir.path())
            .status
            .success()
    );
    let path = dir.path().join("run/trace.jsonl");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut record: serde_json::Value = serde_json::from_str(&lines[4]).unwrap();
    record["utilities"][0] = serde_json::json!(record["utilities"][0].as_f64().unwrap() + 1.0);
    lines[4] = record.to_string();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();

    let out = teamup(&["replay", "run/trace.jsonl"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn bad_inputs_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.jsonl"), "{\"stage\": 1}\n").unwrap();
    std::fs::write(dir.path().join("config.json"), "{\"agents\": []}").unwrap();
    for args in [
        &["replay", "missing.jsonl"][..],
        &["summary", "broken.jsonl"],
        &["match", "--config", "config.json"],
        &["tournament", "--repeats", "0"],
    ] {
        let out = teamup(args, dir.path());
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("error"),
            "{args:?}"
        );
    }
}

#[test]
fn summary_writes_fractions() {
    let dir = tempfile::tempdir().unwrap();
    assert!(
        teamup(&["match", "--stages", "50", "--out", "run"], dir.path())
            .status
            .success()
    );
    let out = teamup(
        &["summary", "run/trace.jsonl", "--from", "3", "--out", "sum"],
        dir.path(),
    );
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sum/summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summary["stages"], 48);
    let total: f64 = ["optimal", "worst", "other"]
        .iter()
        .map(|k| summary[k].as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
}
