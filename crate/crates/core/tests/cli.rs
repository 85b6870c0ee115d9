//! End-to-end runs of the `tfpl` binary.

use std::process::{Command, Output};

fn tfpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfpl")).args(args).env_remove("TFPL_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = tfpl(&all);
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn counts_oriented_configurations() {
    let o = tfpl(&["count", "otfpl", "-u", "01", "-v", "01", "-w", "01"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "t->(01,01;01) = 1");
    assert_eq!(tfpl(&["count", "otfpl", "-u", "01", "-v", "10", "-w", "01"]).status.code(), Some(0));
}

#[test]
fn counts_loop_configurations() {
    for (n, a) in [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)] {
        let v = json(&["count", "fpl", "-n", &n.to_string()]);
        assert_eq!(v["result"]["count"], a, "n = {n}");
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn matching_count_agrees_with_determinant() {
    let o = tfpl(&["count", "matchings", "--odd", "-u", "00101001", "-w", "01100010"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("840"));
}

#[test]
fn verify_exit_codes() {
    let ok = tfpl(&["verify", "moves", "--max-size", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&["verify", "excess0-lr", "--max-size", "3"]);
    assert_eq!(v["result"][0]["failed"], 0);
    let bad = tfpl(&["verify", "weights", "--max-size", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("counterexample"));
}

#[test]
fn usage_errors() {
    assert_eq!(tfpl(&["count", "bogus"]).status.code(), Some(2));
    assert_eq!(tfpl(&["count", "otfpl", "-u", "012", "-v", "01", "-w", "01"]).status.code(), Some(2));
    assert_eq!(tfpl(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn rendering_is_deterministic() {
    for args in [
        &["render", "tangle", "-u", "01", "-v", "01", "-w", "10", "--format", "svg"][..],
        &["render", "puzzle", "-u", "01", "-v", "01", "-w", "01", "--format", "svg"][..],
        &["render", "fpl", "-n", "3", "--index", "2", "--format", "svg"][..],
    ] {
        let (a, b) = (tfpl(args), tfpl(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).starts_with("<svg"));
    }
    let t = stdout(&tfpl(&["render", "tangle", "-u", "01", "-v", "01", "-w", "10", "--format", "svg"]));
    assert!(t.contains("<polyline"));
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        json(&["--threads", threads, "verify", "weights", "--max-size", "3"])["result"].clone()
    };
    assert_eq!(run("1"), run("4"));
}
