use std::process::Command;

use serde_json::Value;
use weilgroup_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weilgroup").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn triples_n4_p1() {
    let (code, out, _) = call(&["horn", "triples", "--n", "4", "--p", "1"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("10 triples\n"));
    assert_eq!(json(&["horn", "triples", "--n", "4", "--p", "1"]).as_array().unwrap().len(), 10);
}

#[test]
fn triple_sizes_by_block() {
    let strict = json(&["horn", "triples", "--n", "2", "--p", "1", "--st", "1,1"]);
    let tilde = json(&["horn", "triples", "--n", "2", "--p", "1", "--st", "1,1", "--mode", "tilde"]);
    assert!(strict.as_array().unwrap().len() <= tilde.as_array().unwrap().len());
    for t in strict.as_array().unwrap() {
        let sets = t.as_array().unwrap();
        assert_eq!(sets.len(), 3);
    }
}

#[test]
fn classify_at_one_prime() {
    let v = json(&["classify", "--q", "2", "--poly", "1,-1,2", "--l", "2"]);
    assert_eq!(v, serde_json::json!([[1, 0]]));
}

#[test]
fn classify_all_primes_keyed_by_prime() {
    let (code, out, err) = call(&["--json", "classify", "--q", "2", "--poly", "1,1,2,2,4"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"2": [[1, 0, 0, 0]], "5": [[1, 0, 0, 0]]}));
    assert!(err.contains("formal"));
}

#[test]
fn classify_with_real_square() {
    let v = json(&["classify", "--q", "9", "--poly", "1,6,27,54,81", "--sign", "plus", "--l", "2"]);
    assert_eq!(v, serde_json::json!([[2, 2, 0, 0, 0, 0]]));
}

#[test]
fn smith_check_text_and_json() {
    let (code, out, _) = call(&["smith", "check", "--a", "1", "--b", "1", "--c", "2,0"]);
    assert_eq!((code, out.as_str()), (0, "feasible\n"));
    let v = json(&["smith", "check", "--a", "2,0", "--b", "1", "--c", "1,1,1"]);
    assert_eq!(v["feasible"], Value::Bool(false));
    assert_eq!(v["violated"], Value::String("a2 >= c3".into()));
}

#[test]
fn smith_enumerate_round_trips() {
    let v = json(&["smith", "enumerate", "--a", "1,1", "--b", "1"]);
    let parts: Vec<Vec<u32>> = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(parts, vec![vec![2, 1, 0], vec![1, 1, 1]]);
    assert_eq!(serde_json::to_value(&parts).unwrap(), v);
}

#[test]
fn reduce_one_by_one() {
    let v = json(&["horn", "reduce", "--s", "1", "--t", "1"]);
    assert_eq!(v["kept"], serde_json::json!(["a1 >= c2", "b1 >= c2"]));
}

#[test]
fn oracles() {
    assert_eq!(json(&["oracle", "lr", "--mu", "2,1", "--nu", "2,1", "--lambda", "3,2,1"]), Value::from(2));
    let v = json(&["oracle", "matrix", "--a", "1", "--b", "1", "--l", "2", "--prec", "3"]);
    assert_eq!(v["complete"], Value::Bool(true));
    assert_eq!(v["cokernels"], serde_json::json!([[2, 0], [1, 1]]));
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["--cache-dir", path, "horn", "triples", "--n", "5", "--p", "2"];
    let cold = call(&args);
    assert_eq!(cold.0, 0);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "no cache file written");
    let warm = call(&args);
    assert_eq!(cold, warm);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["horn", "triples", "--n", "4", "--p", "9"]).0, 1);
    assert_eq!(call(&["classify", "--q", "6", "--poly", "1,0,6"]).0, 1);
    assert_eq!(call(&["horn", "triples", "--n", "4", "--p", "1", "--st", "2,1"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["smith", "check", "--a", "x", "--b", "1", "--c", "1"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
    let (code, _, err) = call(&["oracle", "matrix", "--a", "1", "--b", "1", "--l", "2", "--prec", "1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_weilgroup");
    let ok = Command::new(bin).args(["horn", "triples", "--n", "3", "--p", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["horn", "triples", "--n", "3", "--p", "7"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
