use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclecvx"))
        .args(args)
        .env_remove("CYCLECVX_EXACT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn auto_exchange_on_a_cycle_file() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["generate", "cycle:7"]);
    assert!(gen.status.success());
    let file = write(dir.path(), "cycle7.edges", &stdout(&gen));
    let o = run(&["exchange", "--auto", &file, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], 2);
    assert_eq!(v["method"], "remark-cycle");
}

#[test]
fn hull_trace_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k3.edges", "3 3\n0 1\n1 2\n0 2\n");
    let o = run(&["hull", "--set", "0,1", &file]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("final {0,1,2} after 1 round(s)"));

    let o = run(&["hull", "--json", "--set", "0,1", &file]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], r#"{"round":0,"added":[0,1]}"#);
    assert_eq!(lines[1], r#"{"round":1,"added":[2]}"#);
    assert_eq!(lines[2], r#"{"final":[0,1,2],"rounds":1}"#);
}

#[test]
fn verify_chain_corpus_has_no_failures() {
    let o = run(&["verify", "--corpus", "chordal-chains", "--max-blocks", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failures"));
}

#[test]
fn json_output_is_stable() {
    let a = run(&["exchange", "--exact", "bowtie", "--json"]);
    let b = run(&["exchange", "--exact", "bowtie", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["value"], 3);
    assert_eq!(v["method"], "exact");
}

#[test]
fn exit_codes() {
    // Usage error.
    assert_eq!(run(&["exchange"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // Domain errors.
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.edges", "3 2\n0 1\n");
    let o = run(&["exchange", "--exact", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: parse error"));

    let disc = write(dir.path(), "disc.edges", "4 2\n0 1\n2 3\n");
    let o = run(&["exchange", "--exact", &disc]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: disconnected input"));

    let o = run(&["exchange", "--exact", "/nonexistent/graph.edges"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["hull", "--set", "0,7", "cycle:4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exact_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_cyclecvx"))
        .args(["exchange", "--exact", "cycle:8"])
        .env("CYCLECVX_EXACT_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("too large"));

    let o = run(&["exchange", "--auto", "--cap", "5", "chain:K4,C4,K4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("lower bound"));
}

#[test]
fn formula_mode_reports_structure() {
    let o = run(&["exchange", "--formula", "chain:K3,K3,K3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("value: 4"));
    assert!(out.contains("method: chain-plain"));
    assert!(out.contains("longest non-K2 run: 3"));

    let o = run(&["exchange", "--formula", "chain:K4,C4,K4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn independence_and_convexity_commands() {
    let o = run(&["e-independent", "--json", "--set", "0,1,2,4", "cycle-pendant:5"]);
    let v = json(&o);
    assert_eq!(v["e_independent"], true);
    assert_eq!(v["certificate"]["pivot"], 4);
    assert_eq!(v["certificate"]["anti_pivot"], 3);

    let o = run(&["convex-check", "--json", "--set", "0,1", "cycle:4"]);
    let v = json(&o);
    assert_eq!(v["convex"], true);
    assert_eq!(v["hull_set"], false);

    let o = run(&["interval", "--set", "0,1,2", "cycle:4"]);
    assert_eq!(stdout(&o).trim(), "{0,1,2,3}");
}

#[test]
fn product_and_generate() {
    let o = run(&["product", "complete:2", "complete:2", "--kind", "strong"]);
    assert!(stdout(&o).starts_with("4 6\n"));
    let o = run(&["product", "complete:3", "complete:3", "--exchange", "--json"]);
    let v = json(&o);
    assert_eq!(v["kind"], "exact");
    assert_eq!(v["value"], 3);
    let o = run(&["product", "path:2", "path:2", "--kind", "wreath"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_sat_outputs_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "c sample\np cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
    let o = run(&["reduce-sat", &cnf, "--json"]);
    let v = json(&o);
    assert_eq!(v["k"], 5);
    assert_eq!(v["pair_reading"], "per-pair");
    assert!(v["edge_list"].as_str().unwrap().starts_with("35 "));

    let o = run(&["reduce-sat", &cnf, "--verify", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "consistent");

    let bad = write(dir.path(), "bad.cnf", "p cnf 3 1\n1 2 3 0\n");
    let o = run(&["reduce-sat", &bad]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_runs() {
    let o = run(&["bench", "--repeat", "1", "cycle:6", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v[0]["value"], 2);
}
