use std::process::{Command, Output};

use lommel_core::ApproximantTriple;
use serde_json::Value;

fn lommel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lommel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is a JSON error object")
}

#[test]
fn eval_series_json() {
    let o = lommel(&["eval", "--mu", "1", "--nu", "0.5", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "series");
    let value = v["value"].as_f64().unwrap();
    let q = lommel(&["eval", "--mu", "1", "--nu", "0.5", "--z", "1", "--method", "quadrature"]);
    let qv: Value = serde_json::from_str(&stdout(&q)).unwrap();
    assert!((qv["value"].as_f64().unwrap() - value).abs() < 1e-10);
}

#[test]
fn eval_csv() {
    let o = lommel(&["eval", "--mu", "1.5", "--nu", "0.3", "--z", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mu,nu,z,method,value,est_error"));
    assert!(lines.next().unwrap().starts_with("1.5,0.3,2,series,"));
}

#[test]
fn approximant_even_one() {
    let o = lommel(&["approximant", "--family", "even", "--n", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["A"], serde_json::json!(["6/1", "0/1", "1/1"]));
    assert_eq!(v["B"], serde_json::json!(["6/1", "0/1", "-2/1"]));
    assert_eq!(v["C"], serde_json::json!(["0/1", "6/1"]));
}

#[test]
fn approximant_json_round_trip() {
    for args in [
        &["approximant", "--family", "odd", "--n", "3"][..],
        &["approximant", "--family", "even", "--n", "4", "--normalization", "raw"][..],
        &["approximant", "--family", "general", "--m", "4", "--n", "2"][..],
    ] {
        let o = lommel(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let t = ApproximantTriple::from_json(text.trim()).unwrap();
        assert_eq!(t.to_json(), text.trim());
    }
}

#[test]
fn general_family_needs_m() {
    let o = lommel(&["approximant", "--family", "general", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "ParseError");
}

#[test]
fn parity_mismatch_is_bad_input() {
    let o = lommel(&["approximant", "--family", "general", "--m", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn table_two_first_cell() {
    let o = lommel(&["tables", "--which", "2", "--kmax", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k,1\n1,6.58424e-3\n");
}

#[test]
fn table_json() {
    let o = lommel(&["tables", "--which", "1", "--kmax", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kmax"], 2);
}

#[test]
fn table_out_of_range() {
    let o = lommel(&["tables", "--which", "3", "--kmax", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lommel(&["tables", "--which", "1", "--kmax", "99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zeros_csv_header() {
    let o = lommel(&["zeros", "--family", "even", "--which", "B", "--n", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("re,im,residual\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn figdata_is_deterministic() {
    let a = lommel(&["figdata", "--family", "odd", "--nmax", "4"]);
    let b = lommel(&["figdata", "--family", "odd", "--nmax", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("n,re,im\n"));
}

#[test]
fn hyp2f1trig_output() {
    let o = lommel(&["hyp2f1trig", "--n", "1", "--nu", "0.37", "--theta", "1.1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = (0.37f64 * 1.1).sin() / (2.0 * 0.37 * (0.55f64).sin());
    assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = lommel(&["tables", "--which", "2", "--kmax", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "k,1\n1,6.58424e-3\n");
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("t.csv");
    let o = lommel(&["tables", "--which", "2", "--kmax", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "IoError");
}

#[test]
fn excluded_parameters() {
    let o = lommel(&["eval", "--mu", "0", "--nu", "1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let v = stderr_json(&o);
    assert!(v["detail"].as_str().unwrap().len() > 0);
}

#[test]
fn unknown_flag() {
    let o = lommel(&["eval", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "ParseError");
}

#[test]
fn verify_passes() {
    let o = lommel(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}
