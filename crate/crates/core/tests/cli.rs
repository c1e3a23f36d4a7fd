//! End-to-end runs of the `subshift` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subshift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_subshift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mickey_vertex_cycle_substitution() {
    let out = run(&["cyclesub", "--graph", "mickey", "--mode", "vertex"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "cyclesub");
    let images = &v["result"]["substitution"]["images"];
    let zero: Vec<&str> = images["0"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(zero, ["0", "00", "0120"]);
    assert_eq!(images["1"].as_array().unwrap().len(), 4);
    assert_eq!(v["result"]["primitive"], true);
}

#[test]
fn witness_of_the_worked_word() {
    let v = json(&run(&["witness", "--graph", "mickey", "--word", "213120012"]));
    assert_eq!(v["result"]["root"], "2");
    assert_eq!(v["result"]["depth"], 4);
    assert_eq!(v["result"]["replay_ok"], true);
    let chain = v["result"]["chain"].as_array().unwrap();
    assert_eq!(chain.last().unwrap(), "213120012");
}

#[test]
fn golden_mean_languages_agree() {
    let v = json(&run(&["verify", "--graph", "golden", "--max-len", "8"]));
    assert_eq!(v["result"]["equal"], true);
    assert!(v["result"]["first_divergence"].is_null());
}

#[test]
fn perron_of_golden_matrix() {
    let v = json(&run(&["perron", "--matrix", "golden"]));
    let lambda = v["result"]["eigenvalue"].as_f64().unwrap();
    assert!((lambda - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
}

#[test]
fn graph_document_from_stdin() {
    let doc = r#"{"schema":1,"mode":"vertex","vertices":["x","y"],"edges":[["x","y"],["y","x"],["x","x"]]}"#;
    let out = run_stdin(&["verify", "--graph", "-", "--max-len", "6"], doc);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["equal"], true);
}

#[test]
fn exit_codes() {
    // malformed input
    assert_eq!(run(&["witness", "--graph", "mickey", "--word", "9"]).status.code(), Some(2));
    assert_eq!(run(&["language", "--sub", "/nonexistent.json", "--len", "3"]).status.code(), Some(2));
    // resource cap
    let capped = run(&["--max-set-size", "2", "language", "--sub", "full-shift", "--len", "3"]);
    assert_eq!(capped.status.code(), Some(3));
    let v = json(&capped);
    assert_eq!(v["error"]["kind"], "resource_cap");
    assert_eq!(v["resource_cap"]["exceeded"], true);
    // well-formed graph that is not strongly connected
    let doc = r#"{"schema":1,"mode":"vertex","vertices":["x","y"],"edges":[["x","y"],["x","x"],["y","y"]]}"#;
    let out = run_stdin(&["cyclesub", "--graph", "-", "--mode", "vertex"], doc);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["error"]["kind"], "precondition");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["cyclesub", "--graph", "mickey-edge", "--mode", "edge"][..],
        &["language", "--sub", "random-fibonacci", "--len", "6"][..],
        &["entropy", "--sub", "naive-sofic", "--max-len", "6"][..],
        &["extend", "--mode", "epsilon", "--sub", "random-fibonacci", "--n", "2"][..],
        &["gapshift", "--min", "2", "--max", "4", "--len", "10"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_only_on_request() {
    let plain = json(&run(&["perron", "--matrix", "golden"]));
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&run(&["--timing", "perron", "--matrix", "golden"]));
    assert!(timed["timing_ms"].is_number());
}
