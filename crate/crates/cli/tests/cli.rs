use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tournament_core::constructions::random_tournament;
use tournament_core::tournament::write_ttf;

fn unitour(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unitour"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = unitour(&full, None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn example_8_is_unimodular() {
    let t = gen(&["--kind", "example8"]);
    let o = unitour(&["analyze", "-"], Some(&t));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["unimodular"], true);
    assert_eq!(r["determinant"], "1");
    assert_eq!(r["mccarthy_root"], "1");
}

#[test]
fn example_9_needs_one_vertex() {
    let t = gen(&["--kind", "example9"]);
    let r = json(&unitour(&["uplus", "-"], Some(&t)));
    assert_eq!(r["value"], 1);
    assert_eq!(r["exact"], true);
    assert_eq!(r["certificate"]["added"], 1);
    let r = json(&unitour(&["uminus", "-"], Some(&t)));
    assert_eq!(r["value"], 3);
}

#[test]
fn odd_transitive_determinant() {
    let t = gen(&["--kind", "transitive", "--n", "5"]);
    let o = unitour(&["det", "-"], Some(&t));
    assert_eq!(stdout(&o).trim(), "\"0\"");
}

#[test]
fn gen_writes_files_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.ttf");
    let p = path.to_str().unwrap();
    let o = unitour(&["gen", "--kind", "random", "--n", "7", "--seed", "3", "-o", p], None);
    assert!(o.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, write_ttf(&random_tournament(7, 3).unwrap()));
    let o = unitour(&["det", p], None);
    assert_eq!(stdout(&o).trim(), "\"0\"");
}

#[test]
fn malformed_input_reports_position() {
    let o = unitour(&["det", "-"], Some("tournament v1\nn=3\n1x1\n"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 2"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(unitour(&["gen", "--kind", "transitive"], None).status.code(), Some(2));
    assert_eq!(unitour(&["gen", "--kind", "paley", "--q", "5"], None).status.code(), Some(2));
    assert_eq!(unitour(&["det", "/nonexistent.ttf"], None).status.code(), Some(2));
    assert_eq!(unitour(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn absent_answers_exit_1() {
    let t8 = gen(&["--kind", "example8"]);
    for cmd in ["decompose", "in-h", "invert"] {
        let o = unitour(&[cmd, "-"], Some(&t8));
        assert_eq!(o.status.code(), Some(1), "{cmd}");
        assert_eq!(stdout(&o).trim(), "\"absent\"");
    }
    let c5 = gen(&["--kind", "circular", "--n", "5"]);
    let r = json(&unitour(&["decompose", "-"], Some(&c5)));
    assert_eq!(r["side_a"], serde_json::json!([0, 1, 3]));
}

#[test]
fn switch_witness_between_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ttf");
    let b = dir.path().join("b.ttf");
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    unitour(&["gen", "--kind", "transitive", "--n", "4", "-o", a], None);
    unitour(&["gen", "--kind", "paley-conference", "--q", "3", "-o", b], None);
    let o = unitour(&["switch-witness", a, b], None);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&unitour(&["switch-witness", a, a], None));
    assert_eq!(r["signs"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn invert_round_trips() {
    let t = gen(&["--kind", "transitive", "--n", "4"]);
    let inv = stdout(&unitour(&["invert", "-"], Some(&t)));
    let back = stdout(&unitour(&["invert", "-"], Some(&inv)));
    assert_eq!(back, t);
}

#[test]
fn hat_and_embed_are_unimodular() {
    let t = gen(&["--kind", "random", "--n", "5", "--seed", "8"]);
    let hat = stdout(&unitour(&["hat", "-"], Some(&t)));
    assert_eq!(json(&unitour(&["analyze", "-"], Some(&hat)))["unimodular"], true);
    let emb = stdout(&unitour(&["embed", "-"], Some(&t)));
    let r = json(&unitour(&["analyze", "-"], Some(&emb)));
    assert_eq!(r["unimodular"], true);
    let um = json(&unitour(&["uminus", "-"], Some(&t)))["value"].as_u64().unwrap();
    assert_eq!(r["n"].as_u64().unwrap(), 5 + um);
}

#[test]
fn census_limits_and_files() {
    assert_eq!(unitour(&["census", "--n", "7", "--exhaustive"], None).status.code(), Some(2));
    let o = unitour(&["census", "--n", "4", "--exhaustive"], None);
    let row: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(row["labeled"], "64");
    assert_eq!(row["unimodular"], 48);
    assert_eq!(row["diamonds_total"], 16);

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["census", "--n", "5", "--exhaustive", "--classes", "--out", d];
    let first = json(&unitour(&args, None));
    let path = first["path"].as_str().unwrap().to_string();
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content.lines().count(), 13);
    json(&unitour(&args, None));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), content);
}

#[test]
fn worker_count_does_not_change_results() {
    let t = gen(&["--kind", "random", "--n", "9", "--seed", "21"]);
    let one = stdout(&unitour(&["--workers", "1", "uminus", "-"], Some(&t)));
    let four = stdout(&unitour(&["--workers", "4", "uminus", "-"], Some(&t)));
    assert_eq!(one, four);
    let one = stdout(&unitour(&["--workers", "1", "uplus", "-"], Some(&t)));
    let four = stdout(&unitour(&["--workers", "4", "uplus", "-"], Some(&t)));
    assert_eq!(one, four);
}

#[test]
fn verify_passes() {
    let o = unitour(&["verify", "--seed", "42", "--trials", "5"], None);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["passed"], true);
    assert_eq!(r["seed"], 42);
}
