use rle_luf::io::parse_rle;
use rle_luf::{Occurrence, RleString};
use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rle-luf")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

/// Every reported occurrence must spell a factor of the reported length.
fn revalidate(t: &RleString, v: &Value) {
    let len = v["length"].as_u64().unwrap();
    let mut prev = 0;
    for o in v["occurrences"].as_array().unwrap() {
        let (s, e) = (o[0].as_u64().unwrap(), o[1].as_u64().unwrap());
        assert!(s >= prev && e - s + 1 == len && e <= t.len());
        prev = s;
        t.factor(Occurrence::new(s, e)).unwrap();
    }
}

#[test]
fn compute_examples() {
    let dir = tempfile::tempdir().unwrap();
    let ex1 = write(dir.path(), "ex1.rle", "a:3 b:2 c:5 a:1 b:4\n");
    let v = json(&run(&["compute", "--format", "rle", "--input", &ex1]));
    assert_eq!(v["length"], 15);
    assert_eq!(v["occurrences"], serde_json::json!([[1, 15]]));
    assert_eq!(v["algo"], "rle");
    revalidate(&parse_rle("a:3 b:2 c:5 a:1 b:4").unwrap(), &v);

    let unary = write(dir.path(), "unary.txt", "aaaa");
    let v = json(&run(&["compute", "--format", "raw", "--input", &unary]));
    assert_eq!((v["n"].clone(), v["length"].clone()), (4.into(), 1.into()));
    assert_eq!(v["occurrences"], serde_json::json!([[1, 1]]));

    let ab = "a:1 b:1 ".repeat(4);
    let abpow = write(dir.path(), "abpow.rle", &ab);
    for threads in ["1", "3"] {
        let v = json(&run(&["compute", "--threads", threads, "--input", &abpow]));
        assert_eq!(v["length"], 2);
        assert_eq!(v["occurrences"].as_array().unwrap().len(), 7);
        assert_eq!(v["factors_rle"], serde_json::json!([[["a", 1], ["b", 1]], [["b", 1], ["a", 1]]]));
    }
}

#[test]
fn oracle_agrees_and_respects_budget() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.rle", "a:3 b:4 a:7 c:1 a:3 b:4 a:2\n");
    let fast = json(&run(&["compute", "--input", &p]));
    let slow = json(&run(&["oracle", "--input", &p]));
    assert_eq!(slow["algo"], "naive");
    assert_eq!(fast["occurrences"], slow["occurrences"]);
    let big = write(dir.path(), "big.rle", "a:5000000 b:1\n");
    let out = run(&["oracle", "--max-decode", "1000", "--input", &big]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_rle-luf"))
        .args(["oracle", "--input", &big])
        .env("LUF_MAX_DECODE", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for body in ["a:0", "ab:1", "a:x", "", "# only a comment"] {
        let p = write(dir.path(), "bad.rle", body);
        let out = run(&["compute", "--input", &p]);
        assert_eq!(out.status.code(), Some(2), "{body:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["compute", "--input", "/nonexistent/x.rle"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--corpus", "exhaustive-unary-3"]).status.code(), Some(2));
}

#[test]
fn gen_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("corpus");
    let d = out_dir.to_str().unwrap();
    let args = ["gen", "--sigma", "3", "--m", "50..60", "--exp", "geometric:0.3", "--count", "100", "--seed", "7", "--out", d];
    assert!(run(&args).status.success());
    let mut names: Vec<_> = fs::read_dir(&out_dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    assert_eq!(names.len(), 100);
    let first = fs::read_to_string(&names[0]).unwrap();
    let t = parse_rle(&first).unwrap();
    assert!((50..=60).contains(&t.m()));
    // Same seed, same files.
    let again = dir.path().join("again");
    let mut args2 = args;
    args2[12] = again.to_str().unwrap();
    assert!(run(&args2).status.success());
    assert_eq!(fs::read_to_string(again.join(names[0].file_name().unwrap())).unwrap(), first);

    let out = run(&["verify", "--corpus", d]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "pass: 100 inputs");
    let out = run(&["verify", "--corpus", "exhaustive-binary-14"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn bench_csv() {
    let out = run(&["bench", "--family", "random", "--m", "100,300", "--exp-max", "1048576"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let header: Vec<&str> = lines[0].split(',').collect();
    assert!(header.contains(&"run_ops") && header.contains(&"wlsq_visits") && header.contains(&"peak_words"));
    for l in &lines[1..] {
        assert_eq!(l.split(',').count(), header.len());
    }
    let out = run(&["bench", "--family", "n-independence", "--m", "60", "--exp-max", "1000000000"]);
    assert!(out.status.success());
}
