use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(format!("{name}.axioms")).to_string_lossy().into_owned()
}

fn noether(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noether")).args(args).current_dir(root()).env_remove("NOETHER_MAX_NODES").output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    noether(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = noether(&[args, &["--format", "json"]].concat());
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(root().join("report.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&["check", "--system", &corpus("toy"), "--hypothesis", "q"]), 0);
    assert_eq!(code(&["check", "--system", &corpus("kepler"), "--hypothesis", "Q", "--drop", "A1"]), 1);
    assert_eq!(code(&["check", "--system", &corpus("kepler"), "--hypothesis", "Q", "--drop", "A9"]), 2);
    assert_eq!(code(&["check", "--system", "missing.axioms", "--hypothesis", "Q"]), 2);
    assert_eq!(code(&["check", "--system", &corpus("kepler")]), 2);
}

#[test]
fn parse_errors_are_positioned() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.axioms");
    std::fs::write(&path, "vars: x y\naxiom A1: x + * y\n").unwrap();
    let out = noether(&["check", "--system", path.to_str().unwrap(), "--hypothesis", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.axioms:2:"), "{err}");
}

#[test]
fn certificate_names_each_axiom() {
    let v = json(&["check", "--system", &corpus("kepler"), "--hypothesis", "Q", "--certificate"]);
    assert_valid(&v);
    assert_eq!(v["derivable"], true);
    assert_eq!(v["certificate"].as_array().unwrap().len(), 5);
}

#[test]
fn decompose_components_and_budget() {
    let v = json(&["decompose", "--system", &corpus("xy")]);
    assert_valid(&v);
    let gens: Vec<&Value> = v["components"].as_array().unwrap().iter().map(|c| &c["generators"][0]).collect();
    assert_eq!(gens, [&Value::from("x"), &Value::from("y")]);

    let v = json(&["decompose", "--system", &corpus("kepler"), "--drop", "A1", "--with-hypothesis", "Q"]);
    assert_valid(&v);
    assert_eq!(v["components"].as_array().unwrap().len(), 4);

    let args = ["decompose", "--system", &corpus("kepler"), "--drop", "A1", "--with-hypothesis", "Q", "--max-nodes", "1"];
    assert_eq!(code(&args), 3);
}

#[test]
fn abduce_exit_codes() {
    let kepler = corpus("kepler");
    assert_eq!(code(&["abduce", "--system", &kepler, "--hypothesis", "Q", "--drop", "A1"]), 0);
    assert_eq!(code(&["abduce", "--system", &kepler, "--hypothesis", "Q"]), 0);
    assert_eq!(code(&["abduce", "--system", &kepler, "--hypothesis", "Q", "--drop", "A1,A4"]), 1);
    assert_eq!(code(&["abduce", "--system", &kepler, "--hypothesis", "nope", "--drop", "A1"]), 2);
    assert_eq!(code(&["abduce", "--system", &kepler, "--hypothesis", "Q", "--exactness", "loose"]), 2);
    let args = ["abduce", "--system", &corpus("compton"), "--hypothesis", "Q", "--drop", "A5", "--timeout-secs", "1"];
    assert_eq!(code(&args), 3);
    assert_eq!(json(&args)["status"], "resource-exhausted");
}

#[test]
fn kepler_drop_a1_has_one_candidate() {
    let v = json(&["abduce", "--system", &corpus("kepler"), "--hypothesis", "Q", "--drop", "A1"]);
    assert_valid(&v);
    let accepted: Vec<&str> =
        v["candidates"].as_array().unwrap().iter().filter(|c| c["accepted"] == true).map(|c| c["polynomial"].as_str().unwrap()).collect();
    assert_eq!(accepted, ["Fg*d1^2+2*Fg*d1*d2+Fg*d2^2-G*m1*m2"]);
}

fn text_accepted(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut inside = false;
    for line in text.lines() {
        if line == "  accepted:" {
            inside = true;
        } else if line.starts_with("    ") && inside {
            out.push(line.trim().to_string());
        } else {
            inside = false;
        }
    }
    out.sort();
    out
}

#[test]
fn text_and_json_list_the_same_candidates() {
    for (sys, drop) in [("kepler", "A4"), ("kepler", "A3"), ("einstein", "A2"), ("escape_velocity", "A1"), ("neutrino", "A5")] {
        let args = ["abduce", "--system", &corpus(sys), "--hypothesis", "Q", "--drop", drop];
        let text = String::from_utf8(noether(&args).stdout).unwrap();
        let v = json(&args);
        assert_valid(&v);
        let mut from_json: Vec<String> = v["candidates"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["accepted"] == true)
            .map(|c| c["polynomial"].as_str().unwrap().to_string())
            .collect();
        from_json.sort();
        assert!(!from_json.is_empty());
        assert_eq!(text_accepted(&text), from_json, "{sys} {drop}");
    }
}

#[test]
fn scan_report_validates() {
    let args = ["abduce", "--system", &corpus("einstein_newton"), "--hypothesis", "Q", "--scan-inconsistent"];
    let v = json(&args);
    assert_valid(&v);
    assert_eq!(v["removals"].as_array().unwrap().len(), 5);
    assert!(v["consistent_removals"].as_array().unwrap().contains(&Value::from("N")));
}

fn masked(mut v: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("wall_ms");
                m.remove("timings");
                m.values_mut().for_each(walk);
            }
            Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    v
}

#[test]
fn bench_diffs_are_stable() {
    let args = ["bench", "--corpus", "corpus", "--expected", "corpus/expected/tuples.json", "--systems", "kepler,einstein"];
    assert_eq!(code(&args), 0);
    let a = json(&args);
    let b = json(&args);
    assert_valid(&a);
    assert_eq!(masked(a.clone()), masked(b));
    assert_eq!(a["protocol"], "leave-k-out");
    let kepler = &a["systems"][0];
    assert_eq!(kepler["recovered"], 5);
    assert_eq!(kepler["total"], 10);
    assert!(a["comparison"]["mismatches"].as_array().unwrap().iter().all(|m| m["system"] == "einstein"));
}

#[test]
fn bench_exit_codes() {
    let loo = ["bench", "--corpus", "corpus", "--expected", "corpus/expected/loo.json", "--systems", "kepler,neutrino"];
    assert_eq!(code(&loo), 0);
    let v = json(&loo);
    assert_valid(&v);
    assert_eq!(v["protocol"], "leave-one-out");
    let wrong = ["bench", "--corpus", "corpus", "--expected", "corpus/expected/loo.json", "--protocol", "tuples"];
    assert_eq!(code(&wrong), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    let expected = r#"{"protocol": "loo", "systems": [{"system": "kepler", "cases": [{"drop": ["A1"], "recovered": false}]}]}"#;
    std::fs::write(&path, expected).unwrap();
    assert_eq!(code(&["bench", "--corpus", "corpus", "--expected", path.to_str().unwrap()]), 1);
    std::fs::write(&path, r#"{"protocol": "loo", "sytems": []}"#).unwrap();
    assert_eq!(code(&["bench", "--corpus", "corpus", "--expected", path.to_str().unwrap()]), 2);
}

#[test]
fn schema_rejects_malformed_reports() {
    let mut v = json(&["abduce", "--system", &corpus("kepler"), "--hypothesis", "Q", "--drop", "A1"]);
    v["status"] = Value::from("recovered");
    assert!(!schema().is_valid(&v));
    v["status"] = Value::from("candidates-found");
    v["extra"] = Value::from(1);
    assert!(!schema().is_valid(&v));
}
