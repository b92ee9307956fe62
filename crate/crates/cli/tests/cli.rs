use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlat")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn body(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["body"].clone()
}

#[test]
fn bounds_csv_has_all_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bounds.csv");
    let out = hyperlat(&["bounds", "--format", "csv", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "angle_set,t_raw,t_display");
    assert_eq!(lines.len(), 45);
    let max = lines[1..].iter().map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap()).fold(0.0, f64::max);
    assert_eq!(max, 4.14);
    assert!(lines.iter().any(|l| l.starts_with("pi/6 pi/2 pi/2 pi/2 pi/2,") && l.ends_with(",2.87")));
}

#[test]
fn aniso_reports_places() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l1.json", r#"{"gram": [[-7,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#);
    let b = body(&hyperlat(&["aniso", &l]));
    assert_eq!(b["anisotropic"], true);
    assert_eq!(b["anisotropic_places"], serde_json::json!([2]));
}

#[test]
fn vinberg_on_compact_example() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l3.json", r#"{"gram": [[-3,0,0,0],[0,5,0,0],[0,0,1,0],[0,0,0,1]], "name": "L(3)"}"#);
    let dot = dir.path().join("l3.dot");
    let b = body(&hyperlat(&["vinberg", &l, "--dot", dot.to_str().unwrap()]));
    assert_eq!(b["volume"], "compact");
    assert_eq!(b["bad_group"], "infinite");
    assert_eq!(b["report"]["roots"].as_array().unwrap().len(), 7);
    assert!(fs::read_to_string(dot).unwrap().starts_with("graph"));
}

#[test]
fn malformed_entry_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "bad.json", r#"{"gram": [[-7,0,0,0],[0,1.5,0,0],[0,0,1,0],[0,0,0,1]]}"#);
    let out = hyperlat(&["aniso", &l]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gram[1][1]"));
    assert_eq!(hyperlat(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn bodies_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l5.json", r#"{"gram": [[-55,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#);
    let a = body(&hyperlat(&["--threads", "1", "vinberg", &l]));
    let b = body(&hyperlat(&["--threads", "4", "vinberg", &l]));
    assert_eq!(a, b);
    let a = body(&hyperlat(&["enumerate"]));
    let b = body(&hyperlat(&["--threads", "2", "enumerate"]));
    assert_eq!(a, b);
}
