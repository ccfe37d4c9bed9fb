use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fiberlift")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    assert_eq!(r.code, 0, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn two_block_json(n: usize, f: impl Fn(usize, usize) -> usize) -> String {
    let map: serde_json::Map<String, Value> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| (format!("{a}{b}"), Value::String(f(a, b).to_string())))
        .collect();
    let alphabet: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    serde_json::json!({"memory": 0, "anticipation": 1, "alphabet": alphabet, "block_map": map}).to_string()
}

struct Inputs {
    _dir: tempfile::TempDir,
    rule102: PathBuf,
    diff4: PathBuf,
    constant: PathBuf,
    bernoulli_3_10: PathBuf,
    orbit: PathBuf,
}

fn inputs() -> Inputs {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    Inputs {
        rule102: write(d, "rule102.json", &two_block_json(2, |a, b| (a + b) % 2)),
        diff4: write(d, "diff4.json", &two_block_json(4, |a, b| (b + 4 - a) % 4)),
        constant: write(
            d,
            "constant.json",
            r#"{"x_symbols":["a","b"],"transitions":[["a","a"],["a","b"],["b","a"],["b","b"]],"label":{"a":"0","b":"0"}}"#,
        ),
        bernoulli_3_10: write(d, "b.json", r#"{"type":"bernoulli","probabilities":["3/10","7/10"]}"#),
        orbit: write(d, "orbit.json", r#"{"type":"periodic","orbit":"1"}"#),
        _dir: dir,
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn degree_of_rule102() {
    let i = inputs();
    let v = json(&run(&["degree", s(&i.rule102)]));
    assert_eq!(v["degree"], 2);
    assert_eq!(v["finite_to_one"], true);
}

#[test]
fn periodic_lifts_table_for_difference_mod4() {
    let i = inputs();
    let r = run(&["periodic-lifts", s(&i.diff4), "--max-period", "1", "--format", "table"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let row = r.stdout.lines().find(|l| l.starts_with("2 ")).unwrap();
    assert!(row.contains("02 (x2") && row.contains("13 (x2"), "{row}");
}

#[test]
fn analyze_constant_map() {
    let i = inputs();
    let v = json(&run(&["analyze", s(&i.constant)]));
    assert_eq!(v["finite_to_one"], false);
    assert!((v["entropy_x"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-9);
    assert!(v["entropy_y"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn refusals_exit_with_two() {
    let i = inputs();
    let r = run(&["joining", s(&i.constant)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("infinite-to-one"), "{}", r.stderr);
    assert_eq!(run(&["ca", "--family", "diff", "--modulus", "3", "--vector", "1/2,1/2"]).code, 2);
}

#[test]
fn unreadable_input_exits_with_one() {
    assert_eq!(run(&["degree", "/nonexistent/code.json"]).code, 1);
}

#[test]
fn lift_mc_reports_base_alphabet_frequencies_and_seed() {
    let i = inputs();
    let args = ["lift-mc", s(&i.rule102), "--measure", s(&i.bernoulli_3_10), "--length", "100000", "--seed", "7"];
    let first = run(&args);
    let v = json(&first);
    assert_eq!(v["monte_carlo"]["seed"], 7);
    let lifts = v["lifts"].as_array().unwrap();
    assert_eq!(lifts.len(), 2);
    let mut ones: Vec<f64> = lifts.iter().map(|l| l["frequencies"]["1"].as_f64().unwrap()).collect();
    ones.sort_by(f64::total_cmp);
    assert!((ones[0] - 0.3).abs() < 0.01 && (ones[1] - 0.7).abs() < 0.01, "{ones:?}");
    assert_eq!(run(&args).stdout, first.stdout);
}

#[test]
fn lift_mc_handles_orbit_measures_exactly() {
    let i = inputs();
    let v = json(&run(&["lift-mc", s(&i.diff4), "--measure", s(&i.orbit)]));
    assert_eq!(v["method"], "exact");
    assert_eq!(v["lifts"][0]["measure"], "0123");
    assert_eq!(v["lifts"][0]["multiplicity"], 4);
}

#[test]
fn joining_export_formats() {
    let i = inputs();
    let v = json(&run(&["joining", s(&i.rule102)]));
    assert_eq!(v["degree"], 2);
    assert_eq!(v["symbols"], 4);
    let dot = run(&["joining", s(&i.rule102), "--format", "dot"]);
    assert!(dot.stdout.starts_with("digraph"));
}

#[test]
fn ca_sum_code_mod5() {
    let v = json(&run(&[
        "ca", "--family", "sum", "--modulus", "5", "--vector", "3/5,1/10,1/10,1/10,1/10", "--length", "200000",
    ]));
    let mut mult: Vec<u64> = v["exact"]["lifts"].as_array().unwrap().iter().map(|l| l["multiplicity"].as_u64().unwrap()).collect();
    mult.sort();
    assert_eq!(mult, [1, 2, 2]);
    assert_eq!(v["cross_validation"]["matches"].as_array().unwrap().len(), 3);
}

#[test]
fn ca_sum_code_below_half_falls_back_to_sampling() {
    let v = json(&run(&["ca", "--family", "sum", "--modulus", "3", "--vector", "1/3,1/3,1/3", "--length", "50000"]));
    assert!(v.get("exact").is_none());
    assert_eq!(v["monte_carlo"]["method"], "monte-carlo");
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn ca_point_mass_becomes_an_orbit() {
    let v = json(&run(&["ca", "--family", "sum", "--modulus", "3", "--vector", "0,1,0", "--no-mc"]));
    assert_eq!(v["exact"]["base_measure"], "orbit of 2");
    assert_eq!(v["exact"]["method"], "exact");
}
