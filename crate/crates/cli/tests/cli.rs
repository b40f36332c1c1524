use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transmds")).args(args).output().expect("spawn transmds")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn construct(dir: &TempDir, name: &str, spec: Value) -> PathBuf {
    let sp = write(dir, &format!("{name}.spec.json"), &spec);
    let out = dir.path().join(format!("{name}.json"));
    let o = run(&["construct", s(&sp), "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn construct_and_verify_with_certificate() {
    let dir = TempDir::new().unwrap();
    let sp = write(&dir, "cp3.json", &json!({ "graph": "cp:3" }));
    let out = dir.path().join("code.json");
    let cert = dir.path().join("cert.json");
    let o = run(&["construct", s(&sp), "-o", s(&out), "--certificate", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let o = run(&["verify", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("mds: true"));

    let o = run(&["verify", s(&out), "--mode", "topolinear", "--certificate", s(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("certificate replayed"));

    let o = run(&["--json", "verify", s(&out), "--mode", "transitive"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], json!(true));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let sp = write(&dir, "d3.json", &json!({ "group": "dihedral:3", "length": 3 }));
    let out = dir.path().join("code.json");
    let cert = dir.path().join("cert.json");
    assert_eq!(code(&run(&["construct", s(&sp), "-o", s(&out), "--certificate", s(&cert)])), 0);
    let other = construct(&dir, "c6", json!({ "group": "cyclic:6", "length": 3 }));
    let o = run(&["verify", s(&other), "--mode", "topolinear", "--certificate", s(&cert)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn non_mds_word_list_exits_one() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "bad.json",
        &json!({ "q": 2, "n": 3, "structure": { "kind": "plain" }, "words": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]] }),
    );
    let o = run(&["verify", s(&f)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("mds: false"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("garbage.json");
    fs::write(&f, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", s(&f)])), 2);
    let sp = write(&dir, "spec.json", &json!({ "p": 3, "outer": "cp", "inner": [1] }));
    assert_eq!(code(&run(&["construct", s(&sp)])), 2);
    let sp = write(&dir, "spec2.json", &json!({ "colour": "blue" }));
    assert_eq!(code(&run(&["construct", s(&sp)])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/code.json"])), 2);
}

#[test]
fn oversized_search_exits_three() {
    let dir = TempDir::new().unwrap();
    let c = construct(&dir, "big", json!({ "group": "cyclic:6", "length": 6 }));
    let o = run(&["--budget-points", "100", "verify", s(&c), "--mode", "transitive"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn composition_and_quadratic_specs() {
    let dir = TempDir::new().unwrap();
    let c = construct(&dir, "comp", json!({ "p": 3, "outer": "zpz2", "inner": [1, 2] }));
    assert_eq!(code(&run(&["verify", s(&c), "--mode", "topolinear"])), 0);
    let q = construct(&dir, "quad", json!({ "p": 2, "n": 3, "r": "x1x2" }));
    assert_eq!(code(&run(&["verify", s(&q), "--mode", "topolinear"])), 0);
}

#[test]
fn classify_q4_codes() {
    let dir = TempDir::new().unwrap();
    let r2 = construct(&dir, "r2", json!({ "n": 4, "semilinear": "x1x2 + x3x4" }));
    let o = run(&["--json", "classify", s(&r2)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], json!(2));

    let r4 = construct(&dir, "r4", json!({ "n": 4, "semilinear": "x1x2x3" }));
    let o = run(&["classify", s(&r4), "--cross-check"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("degree: 3"));

    let h = construct(&dir, "h", json!({ "code": "H" }));
    let o = run(&["classify", s(&h)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("semilinear: false"));
}

#[test]
fn equivalence_of_codes() {
    let dir = TempDir::new().unwrap();
    let a = construct(&dir, "a", json!({ "n": 4, "semilinear": "x1x2" }));
    let b = construct(&dir, "b", json!({ "n": 4, "semilinear": "x3x4" }));
    let c = construct(&dir, "c", json!({ "n": 4, "semilinear": "x1x2 + x3x4" }));
    assert_eq!(code(&run(&["equivalent", s(&a), s(&b)])), 0);
    assert_eq!(code(&run(&["equivalent", s(&a), s(&c)])), 1);
}

#[test]
fn gloop_builtins() {
    assert_eq!(code(&run(&["gloop", "dihedral:3"])), 0);
    assert_eq!(code(&run(&["gloop", "cp:5"])), 0);
    let o = run(&["gloop", "non-g6"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("principal isotope at (0, 2)"));
}

#[test]
fn gloop_from_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "z3.json", &json!({ "identity": 0, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]] }));
    assert_eq!(code(&run(&["gloop", s(&f)])), 0);
    let f = write(&dir, "bad.json", &json!({ "identity": 0, "table": [[0, 1, 2], [1, 1, 0], [2, 0, 1]] }));
    assert_eq!(code(&run(&["gloop", s(&f)])), 2);
}

#[test]
fn counting_commands() {
    let o = run(&["count", "partitions", "10", "100"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("p(N) = 42") && out.contains("p(N) = 190569292"));

    let o = run(&["--json", "count", "quadratic", "--q", "2", "--n", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exhibit"]["classes"].as_array().unwrap().len(), 2);

    let o = run(&["--json", "count", "partition-codes", "--total", "3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}
