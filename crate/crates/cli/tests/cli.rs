use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn bvext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvext")).args(args).output().expect("spawn bvext")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = bvext(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("timing");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn dims(report: &Value, suite: &str, complex: &str) -> Vec<u64> {
    let suites = report["instances"][0]["suites"].as_array().unwrap();
    let run = suites.iter().find(|s| s["suite"] == suite).unwrap();
    let row = run["dimensions"].as_array().unwrap().iter().find(|r| r["complex"] == complex).unwrap();
    row["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()
}

#[test]
fn bv_on_dual_numbers_passes() {
    let path = corpus("dual_numbers");
    let out = bvext(&["bv", &path, "--max-degree", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&["bv", &path, "--max-degree", "4"]);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["passed"], true);
    assert_eq!(dims(&report, "bv", "HH(A, A)"), [2, 1, 1, 1, 1]);
}

#[test]
fn dual_suite_on_sweedler_passes() {
    assert_eq!(code(&bvext(&["dual", &corpus("sweedler")])), 0);
}

#[test]
fn broken_inputs_fail_validation() {
    for name in ["broken_unit", "broken_antipode"] {
        let out = bvext(&["validate", &corpus(name)]);
        assert_eq!(code(&out), 1, "{name}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"), "{name}");
    }
}

#[test]
fn malformed_json_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"basis\": [").unwrap();
    assert_eq!(code(&bvext(&["validate", path.to_str().unwrap()])), 3);
    assert_eq!(code(&bvext(&["validate", dir.path().join("missing.json").to_str().unwrap()])), 3);
}

#[test]
fn schema_violation_exits_with_schema_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    fs::write(&path, r#"{"basis": ["1", "x"], "mul": [[["1"]]], "unit": ["1", "0"]}"#).unwrap();
    assert_eq!(code(&bvext(&["validate", path.to_str().unwrap()])), 4);
}

#[test]
fn budget_exhaustion_exits_with_budget_code() {
    let out = bvext(&["cohomology", &corpus("matrix_2x2"), "--budget", "10"]);
    assert_eq!(code(&out), 5, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&bvext(&["bv", &corpus("rationals"), "--no-such-flag"])), 2);
    assert_eq!(code(&bvext(&["bv", &corpus("rationals"), "--max-degree", "0"])), 2);
    assert_eq!(code(&bvext(&["bv"])), 2);
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args = ["all", &corpus("nakayama_2cycle"), &corpus("group_c2")];
    let mut a = json(&args);
    let mut b = json(&args);
    let mut parallel = json(&[&args[..], &["--jobs", "2"]].concat());
    for v in [&mut a, &mut b, &mut parallel] {
        strip_timing(v);
    }
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(text, serde_json::to_string(&b).unwrap());
    assert_eq!(text, serde_json::to_string(&parallel).unwrap());
}

#[test]
fn field_override_changes_the_ground_field() {
    let report = json(&["cohomology", &corpus("dual_numbers"), "--field", "GF3", "--max-degree", "2"]);
    assert_eq!(report["instances"][0]["field"], "GF3");
    assert_eq!(report["passed"], true);
}
