use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jmodular"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const TRIVIAL: &str = r#"{"n":1,"s2":[],"s3":[]}"#;
const LEVEL_TWO: &str = r#"{"n":6,"s2":[[1,2],[3,4],[5,6]],"s3":[[1,2,3],[4,5,6]]}"#;

#[test]
fn analyze_trivial_group() {
    let out = run(&["analyze"], TRIVIAL);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    assert_eq!(v["et"], 12);
    assert_eq!(v["genus"], 0);
    assert_eq!(v["minimal_lift"], false);
    assert_eq!(v["boundary_words"].as_array().unwrap().len(), 3);
}

#[test]
fn enumerate_index_three() {
    let out = run(&["enumerate", "--index", "3"], "");
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["summary"]["count"], 2);
}

#[test]
fn lift_level_two() {
    let out = run(&["lift", "-"], LEVEL_TWO);
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(rows.last().unwrap()["summary"]["count"], 4);
    let rational = rows[..rows.len() - 1]
        .iter()
        .filter(|r| r["report"]["r"] == 1)
        .count();
    let k3 = rows[..rows.len() - 1]
        .iter()
        .filter(|r| r["report"]["r"] == 2)
        .count();
    assert_eq!((rational, k3), (3, 1));
}

#[test]
fn malformed_input_is_a_json_error() {
    for input in ["junk", r#"{"n":2,"s2":[[1,3]],"s3":[]}"#] {
        let out = run(&["analyze"], input);
        assert_eq!(out.status.code(), Some(1));
        let v = &lines(&out)[0];
        assert!(v["error"].is_string() && v["message"].is_string());
    }
}

#[test]
fn isotrivial_model_is_reported() {
    let out = run(&["weierstrass"], r#"{"r":1,"p":["0"],"q":["-1","0","0","0","0","0","1"]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["error"], "isotrivial-model");
}

#[test]
fn output_is_deterministic() {
    let strip = |out: Output| {
        lines(&out)
            .into_iter()
            .map(|mut v| {
                if let Some(s) = v.get_mut("summary").and_then(Value::as_object_mut) {
                    s.remove("elapsed_ms");
                }
                v
            })
            .collect::<Vec<_>>()
    };
    let a = strip(run(&["--workers", "1", "enumerate", "--index", "9", "--up-to"], ""));
    let b = strip(run(&["--workers", "4", "enumerate", "--index", "9", "--up-to"], ""));
    assert_eq!(a, b);
    let a = run(&["weierstrass", "--random", "20", "--seed", "7"], "");
    let b = run(&["--workers", "2", "weierstrass", "--random", "20", "--seed", "7"], "");
    assert_eq!(a.stdout, b.stdout);
}
