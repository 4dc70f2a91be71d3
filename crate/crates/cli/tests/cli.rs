use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gammasphere")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, v)
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn vectors_of_cross_polytope() {
    let (code, v) = run_json(&["vectors", "--generator", "cross:4"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["h"]), ["1", "4", "6", "4", "1"]);
    assert_eq!(strings(&v["gamma"]), ["1", "0", "0"]);
    assert_eq!(v["gamma_agreement"], true);
    assert_eq!(v["dehn_sommerville"], true);
}

#[test]
fn vectors_from_inline_h() {
    let (code, v) = run_json(&["vectors", "--h", "1,4,1"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["gamma"]), ["1", "2"]);
    let (code, _, err) = run(&["vectors", "--h", "1,2,3"]);
    assert_eq!(code, 2);
    assert!(err.contains("palindromic"));
}

#[test]
fn vectors_parse_and_shape_errors() {
    let (code, _, err) = run(&["vectors", "--h", "1,x,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("entry 1"));
    assert_eq!(run(&["vectors", "--h", "1,4,1", "--d", "4"]).0, 2);
    assert_eq!(run(&["vectors", "--h", "1,4,1", "--f", "3,3"]).0, 2);
    assert_eq!(run(&["vectors", "--generator", "cube:3"]).0, 2);
    assert_eq!(run(&["vectors", "--generator", "cross:30"]).0, 2);
    let (code, v) = run_json(&["vectors", "--gamma", "1,2,0", "--d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["h"]), ["1", "6", "10", "6", "1"]);
}

#[test]
fn check_modes() {
    assert_eq!(run(&["check", "sphere", "--h", "1,4,6,4,1"]).0, 0);
    let (code, v) = run_json(&["check", "cm", "--h", "1,2,4"]);
    assert_eq!(code, 1);
    assert_eq!(v["failing_index"], 2);
    assert_eq!(run(&["check", "fvector", "--f", "1"]).0, 0);
    assert_eq!(run(&["check", "fvector", "--generator", "cycle:5"]).0, 0);
    assert_eq!(run(&["check", "bogus", "--h", "1"]).0, 2);
}

#[test]
fn link_analyze_codes() {
    let (code, v) = run_json(&["link", "analyze", "--generator", "cross:4"]);
    assert_eq!(code, 0);
    assert_eq!(v["identities_hold"], true);
    let (code, v) = run_json(&["link", "analyze", "--generator", "simplexboundary:3"]);
    assert_eq!(code, 3);
    assert_eq!(v["violating_edges"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["link", "analyze", "--h", "1,4,1"]).0, 2);
}

#[test]
fn link_analyze_from_file() {
    let dir = std::env::temp_dir().join(format!("gs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.facets");
    std::fs::write(&path, "# 4-cycle\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let (code, v) = run_json(&["link", "analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], 2);
    assert_eq!(strings(&v["h"]), ["1", "2", "1"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extend_rows() {
    let (code, v) = run_json(&["extend", "--gamma", "1", "--d", "6", "--mode", "sphere", "--strategy", "max"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["gamma"].as_array().unwrap().len(), 4);
    let (code, v) = run_json(&["extend", "--gamma", "1", "--d", "4", "--strategy", "given:2,100"]);
    assert_eq!(code, 1);
    assert_eq!(v["infeasible_at"], 2);
    assert_eq!(run(&["extend", "--gamma", "1", "--d", "4", "--strategy", "fraction:3/2"]).0, 2);
}

#[test]
fn random_strategy_is_seeded() {
    let args = ["extend", "--gamma", "1", "--d", "10", "--strategy", "random", "--seed", "7"];
    let a = run(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, run(&args));
    let other = run(&["extend", "--gamma", "1", "--d", "10", "--strategy", "random", "--seed", "8"]);
    assert_ne!(a.1, other.1);
}

#[test]
fn ortho_commands() {
    let (code, v) = run_json(&["ortho", "mu", "--N", "4", "--scheme", "chebyshev"]);
    assert_eq!(code, 0);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 15);
    let e43 = entries.iter().find(|e| e["n"] == 4 && e["k"] == 3).unwrap();
    assert_eq!(e43["mu"], "4");
    let (code, v) = run_json(&["ortho", "gamma-dimers", "--h", "1,4,6,4,1"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["gamma"]), ["1", "0", "0"]);
    assert_eq!(v["agreement"], true);
    assert_eq!(run(&["ortho", "covers", "--m", "6", "--r", "2"]).0, 0);
    let (code, v) = run_json(&["ortho", "invert", "--z", "0,0,4"]);
    assert_eq!(code, 0);
    // Lower half of h for gamma = (1, 0, 0), d = 4.
    assert_eq!(strings(&v["formal"]["h"]), ["1", "4", "6"]);
}

#[test]
fn custom_scheme_file() {
    let dir = std::env::temp_dir().join(format!("gs-scheme-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.json");
    std::fs::write(&path, r#"{"b": ["1", "1", "1"], "lam": ["1", "1"]}"#).unwrap();
    let (code, v) = run_json(&["ortho", "mu", "--N", "3", "--scheme", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // Unit weights count Motzkin paths: 1, 1, 2, 4 return to level 0.
    let at = |n: u64| v["entries"].as_array().unwrap().iter().find(|e| e["n"] == n && e["k"] == 0).unwrap()["mu"].clone();
    assert_eq!([at(0), at(1), at(2), at(3)], ["1", "1", "2", "4"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn formats_and_determinism() {
    let a = run(&["link", "analyze", "--generator", "cross:5"]);
    assert_eq!(a, run(&["link", "analyze", "--generator", "cross:5"]));
    let (code, csv, _) = run(&["vectors", "--generator", "cross:3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.contains("h,1,3,3,1\n"));
    let big = format!("1,{},1", "9".repeat(40));
    let (_, table, _) = run(&["vectors", "--h", &big, "--format", "table"]);
    assert!(table.contains("…(40 digits)"));
    let (_, json, _) = run(&["vectors", "--h", &big]);
    assert!(json.contains(&"9".repeat(40)));
}
