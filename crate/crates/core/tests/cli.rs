use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirmonoid"))
}

fn input(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn transform(kind: &str, file: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["transform", "--kind", kind, "--input", file.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn hadamard_and_walsh_emit_integers() {
    let f = input("ints.json", "[1, 2, 3, 4]");
    let out = transform("hadamard", &f, &["--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], serde_json::json!([10, -2, -4, 0]));
    assert_eq!(v["n"], 4);
    assert_eq!(v["verify"]["pass"], true);

    let out = transform("hadamard-staged", &f, &[]);
    assert_eq!(json(&out)["result"], serde_json::json!([10, -2, -4, 0]));

    let out = transform("walsh", &f, &["--n", "4", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], serde_json::json!([10, -4, 0, -2]));
}

#[test]
fn dft_kernel_and_conjugate() {
    let f = input("dft.json", "[1, 2, 3, 4]");
    let plain = json(&transform("dft", &f, &["--verify"]));
    let conj = json(&transform("dft", &f, &["--conjugate"]));
    let im = |v: &Value, k: usize| v["result"][k][1].as_f64().unwrap();
    assert!((im(&plain, 1) + 2.0).abs() < 1e-12);
    assert!((im(&conj, 1) - 2.0).abs() < 1e-12);
    assert_eq!(plain["verify"]["pass"], true);
}

#[test]
fn two_dimensional_inputs() {
    let f = input("grid.json", "[[1, 2], [3, 4]]");
    let out = transform("dft2", &f, &["--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["result"][1][0][0].as_f64().unwrap() + 4.0).abs() < 1e-12);

    let same = json(&transform("dft", &f, &["--dims", "2"]));
    assert_eq!(same["result"], v["result"]);

    let out = transform("hadamard", &f, &["--dims", "2"]);
    assert_eq!(json(&out)["result"], serde_json::json!([[10, -2], [-4, 0]]));
}

#[test]
fn invalid_input_exits_2() {
    let missing = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("does-not-exist.json");
    assert_eq!(transform("dft", &missing, &[]).status.code(), Some(2));

    let odd = input("odd.json", "[1, 2, 3]");
    let out = transform("hadamard", &odd, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let f = input("short.json", "[1, 2]");
    assert_eq!(transform("walsh", &f, &["--n", "4"]).status.code(), Some(2));
    assert_eq!(transform("walsh", &f, &["--conjugate"]).status.code(), Some(2));

    let bad = input("bad.json", "[1, \"x\"]");
    assert_eq!(transform("dft", &bad, &[]).status.code(), Some(2));
    let ragged = input("ragged.json", "[[1, 2], [3]]");
    assert_eq!(transform("dft2", &ragged, &[]).status.code(), Some(2));

    assert_eq!(run(&["check", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_is_deterministic() {
    let a = run(&["check", "--seed", "11", "--cases", "20"]);
    let b = run(&["check", "--seed", "11", "--cases", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    let reports = v["reports"].as_array().unwrap();
    let fixture = reports.iter().find(|r| r["expect_pass"] == false).unwrap();
    assert_eq!(fixture["pass"], false);
    assert!(fixture["witness"].is_object());
}

#[test]
fn bench_reports_counts() {
    let out = run(&["bench", "--kind", "hadamard", "--n", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let staged = v["counts"]["staged"].as_u64().unwrap();
    assert!(staged <= 4 * 64 * 6);
    assert!(v["counts"]["embedding"].as_u64().unwrap() > staged);
    assert!(v["counts"]["oracle"].as_u64().unwrap() > 0);

    let dft = json(&run(&["bench", "--kind", "dft", "--n", "16", "--seed", "3"]));
    assert!(dft["counts"]["embedding"].as_u64().unwrap() > 0);
    assert_eq!(run(&["bench", "--kind", "walsh", "--n", "12"]).status.code(), Some(2));
}
