use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use prefalloc::gen::{seeded_instance, RandomClass};
use prefalloc::serialize_instance;
use serde_json::Value;
use tempfile::TempDir;

const WORKED: &str = r#"{ "items": ["a","b","c"],
  "agents": [ {"id":"1","items":["a","b","c"],"arcs":[]},
              {"id":"2","items":["b"],"arcs":[]},
              {"id":"3","items":["c"],"arcs":[]} ] }"#;

const FIGURE_CNF: &str = "p cnf 4 2\n1 -3 -4 0\n-1 2 -4 0\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prefalloc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn worked_example_values() {
    let files = Files::new();
    let inst = files.put("w.json", WORKED);
    let max = run(&["solve", s(&inst), "--objective", "max"]);
    assert_eq!(max.status.code(), Some(0));
    assert_eq!(json(&max)["value"], 1);
    let sum = run(&["solve", s(&inst), "--objective", "sum", "--json"]);
    assert_eq!(json(&sum)["value"], 2);
    assert_eq!(json(&sum)["sum"], 2);
}

#[test]
fn threshold_decisions() {
    let files = Files::new();
    let inst = files.put("w.json", WORKED);
    let no = run(&["solve", s(&inst), "--objective", "max", "--threshold", "0"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json(&no)["answer"], "no");
    let yes = run(&["solve", s(&inst), "--objective", "max", "--threshold", "1"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json(&yes)["answer"], "yes");
    assert_eq!(json(&yes)["max"], 1);
}

#[test]
fn table_output() {
    let out = run_with_stdin(&["solve", "-", "--table"], WORKED);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("objective  sum\n"));
    assert!(text.contains("value      2"));
}

#[test]
fn eval_examples() {
    let files = Files::new();
    let inst = files.put("w.json", WORKED);
    let alloc = files.put("a.json", r#"{"allocation":{"1":["a"],"2":["b"],"3":["c"]}}"#);
    let out = json(&run(&["eval", s(&inst), s(&alloc)]));
    assert_eq!((out["sum"].clone(), out["max"].clone()), (2.into(), 2.into()));

    let empty = run_with_stdin(&["eval", s(&inst), "-"], r#"{"allocation":{}}"#);
    assert_eq!(json(&empty)["sum"], 5);

    let overlap = run_with_stdin(&["eval", s(&inst), "-"], r#"{"allocation":{"1":["b"],"2":["b"]}}"#);
    assert_eq!(overlap.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&overlap.stderr).contains("overlap"));
}

#[test]
fn classify_examples() {
    let matching = r#"{"items":["a","b"],"agents":[{"id":"1","items":["a","b"],"arcs":[["a","b"]]}]}"#;
    let out = json(&run_with_stdin(&["classify", "-"], matching));
    assert_eq!(out["gamma"], 0);
    assert_eq!(out["recommended"]["sum"], "minsum-matchings");

    let star = r#"{"items":["r","x","y"],"agents":[{"id":"1","items":["r","x","y"],"arcs":[["r","x"],["r","y"]]}]}"#;
    let out = json(&run_with_stdin(&["classify", "-"], star));
    assert!(out["classes"]["1"].as_array().unwrap().contains(&"OutStar".into()));

    let mixed = r#"{"items":["a","b","c","d"],"agents":[{"id":"1","items":["a","b","c","d"],
        "arcs":[["a","c"],["b","c"],["c","d"],["a","d"]]}]}"#;
    let out = json(&run_with_stdin(&["classify", "-"], mixed));
    assert_eq!(out["classes"]["1"], serde_json::json!(["GeneralDAG"]));
}

#[test]
fn generate_examples() {
    let files = Files::new();
    let cnf = files.put("f.cnf", FIGURE_CNF);
    let out = run(&["generate", "--reduction", "sat-2agents", "--source", s(&cnf)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["items"].as_array().unwrap().len(), 14);
    let meta: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(meta["thresholds"][0]["bound"], 8);

    let small = files.put("x.json", r#"{"X":[1,2,3],"C":[[1,2,3],[1,2,3],[1,2,3]]}"#);
    let refused = run(&["generate", "--reduction", "x3c-matchings", "--source", s(&small)]);
    assert_eq!(refused.status.code(), Some(2));

    let args = ["generate", "--random", "path", "--items", "5", "--agents", "2", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let bad = run_with_stdin(&["solve", "-"], "{ not json");
    assert_eq!(bad.status.code(), Some(2));
    let missing = run(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = run_with_stdin(&["solve", "-", "--algorithm", "simplex"], WORKED);
    assert_eq!(unknown.status.code(), Some(2));

    let unsupported = run_with_stdin(&["solve", "-", "--objective", "max", "--algorithm", "minsum-paths"], WORKED);
    assert_eq!(unsupported.status.code(), Some(3));

    let refused = bin()
        .args(["solve", "-", "--objective", "max"])
        .env("PREFALLOC_ORACLE_LIMIT", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            child.stdin.take().unwrap().write_all(WORKED.as_bytes())?;
            child.wait_with_output()
        })
        .unwrap();
    assert_eq!(refused.status.code(), Some(4));
}

#[test]
fn oracle_and_auto_agree() {
    let files = Files::new();
    for class in RandomClass::ALL {
        for seed in 0..3 {
            let inst = seeded_instance(class, 6, 2 + (seed as usize % 2), seed).unwrap();
            let path = files.put(&format!("{class}-{seed}.json"), &serialize_instance(&inst));
            for objective in ["sum", "max"] {
                let value = |algorithm: &str| {
                    let out = run(&["solve", s(&path), "--objective", objective, "--algorithm", algorithm]);
                    assert_eq!(out.status.code(), Some(0), "{class} {seed} {objective} {algorithm}");
                    json(&out)["value"].clone()
                };
                assert_eq!(value("auto"), value("oracle"), "{class} seed {seed} {objective}");
            }
        }
    }
}
