use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_principal-basis")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/output.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).unwrap()
}

fn assert_valid(doc: &Value) {
    let s = schema();
    if let Err(errors) = s.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("schema violations: {msgs:?}");
    };
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("principal-basis-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn a2_json_verified() {
    let o = run(&["basis", "A2", "--format", "json", "--verify"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_valid(&doc);
    assert_eq!(doc["certification"]["certified"], Value::Bool(true));
    assert_eq!(doc["basis"][0]["coords"], serde_json::json!(["1", "1"]));
    assert_eq!(doc["basis"][1]["coords"], serde_json::json!(["1", "-1"]));
    assert_eq!(doc["basis"][1]["ambient"], serde_json::json!(["1", "-2", "1"]));
}

#[test]
fn g2_text_table() {
    let o = run(&["basis", "G2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("1 ") || l.starts_with("5 ")).collect();
    assert_eq!(rows.len(), 2, "{text}");
    assert!(rows[0].contains("| 5 3 "), "{text}");
    assert!(rows[1].contains("| 3 -1 "), "{text}");
}

#[test]
fn e8_guard() {
    let o = run(&["basis", "E8"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("orbit cap"), "{err}");
}

#[test]
fn bad_arguments() {
    assert_eq!(code(&run(&["basis", "Q3"])), 2);
    assert_eq!(code(&run(&["basis", "D2"])), 2);
    assert_eq!(code(&run(&["basis", "B3", "--route", "sideways"])), 2);
    assert_eq!(code(&run(&["basis", "B3", "--route", "orbit", "--seed-weight", "9"])), 2);
}

#[test]
fn d4_orbit_seed_one_is_dependent() {
    let o = run(&["basis", "D4", "--route", "orbit", "--seed-weight", "1"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("degree 4"), "{err}");
}

#[test]
fn info_queries() {
    let text = |args: &[&str]| String::from_utf8(run(args).stdout).unwrap();
    assert_eq!(text(&["info", "D4", "exponents"]), "1 3 3 5\n");
    assert_eq!(text(&["info", "B3", "dual"]), "C3\n");
    assert_eq!(text(&["info", "A2", "dims"]), "3 5\n");
    assert_eq!(text(&["info", "D4", "triple"]), "h0 6 10 6 6\nc 6 10 6 6\n");
    assert_eq!(text(&["info", "A2", "roots"]).lines().count(), 3);
    for q in ["exponents", "roots", "dual", "dims", "triple"] {
        let o = run(&["info", "F4", q, "--format", "json"]);
        assert_eq!(code(&o), 0);
        assert_valid(&json(&o));
    }
}

#[test]
fn json_is_deterministic_and_schema_valid() {
    for args in [
        &["basis", "D4", "--format", "json", "--verify"][..],
        &["basis", "C3", "--dual", "--format", "json", "--verify"],
        &["basis", "E6", "--format", "json"],
        &["basis", "A3", "--route", "orbit", "--format", "json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_valid(&json(&a));
    }
}

#[test]
fn dual_flag_certifies_on_dual_type() {
    let o = run(&["basis", "B3", "--dual", "--verify", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["dual"], Value::Bool(true));
    assert_eq!(doc["coordinates"], Value::String("simple-root".into()));
    assert_eq!(doc["certification"]["certified_on"], Value::String("C3".into()));
}

#[test]
fn certify_round_trip_and_perturbation() {
    let o = run(&["basis", "B3", "--format", "json"]);
    let good = temp_file("good.json", std::str::from_utf8(&o.stdout).unwrap());
    assert_eq!(code(&run(&["certify", good.to_str().unwrap()])), 0);

    let mut doc = json(&o);
    doc["basis"][1]["coords"] = serde_json::json!(["5", "5", "2"]);
    let bad = temp_file("bad.json", &doc.to_string());
    let out = run(&["certify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8(out.stdout).unwrap().contains("not orthogonal"));

    assert_eq!(code(&run(&["certify", "/nonexistent/basis.json"])), 2);
    std::fs::remove_file(good).ok();
    std::fs::remove_file(bad).ok();
}

#[test]
fn orbit_cache_is_transparent() {
    let dir = std::env::temp_dir().join(format!("principal-basis-cache-{}", std::process::id()));
    let cached = || {
        Command::new(env!("CARGO_BIN_EXE_principal-basis"))
            .args(["basis", "F4", "--orbit-cache", "--format", "json"])
            .env("PRINCIPAL_BASIS_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = cached();
    let second = cached();
    let plain = run(&["basis", "F4", "--format", "json"]);
    assert_eq!(code(&first), 0);
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    assert_eq!(first.stdout, plain.stdout);
    assert_eq!(second.stdout, plain.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn schema_rejects_bare_numbers() {
    let mut doc = json(&run(&["basis", "A2", "--format", "json"]));
    assert!(schema().is_valid(&doc));
    doc["basis"][0]["coords"][0] = serde_json::json!(1);
    assert!(!schema().is_valid(&doc));
}
