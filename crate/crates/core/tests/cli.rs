use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acyclic-lab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const K23: &str = "p edge 5 6\ne 1 3\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 2 5\n";

#[test]
fn gen_writes_graph_sidecar_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["gen", "chain", "--k", "3", "--t", "2", "--out", "chain"])), 0);
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(d.join("chain.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["n"], 10);
    assert_eq!(meta["terminals"].as_array().unwrap().len(), 2);
    assert!(std::fs::read_to_string(d.join("chain.col")).unwrap().contains("p edge 10 14"));

    assert_eq!(code(&run(d, &["gen", "gd", "--d", "5", "--out", "g5"])), 0);
    assert!(std::fs::read_to_string(d.join("g5.col")).unwrap().contains("p edge 12 30"));
    assert_eq!(code(&run(d, &["gen", "exception", "--name", "q3", "--out", "q3"])), 0);
    assert!(std::fs::read_to_string(d.join("q3.col")).unwrap().contains("p edge 8 12"));
    assert_eq!(code(&run(d, &["gen", "exception", "--name", "nope", "--out", "x"])), 3);
}

#[test]
fn solve_exit_codes_follow_the_decision() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "gd", "--d", "5", "--out", "g5"]);
    let yes = run(d, &["--json", "solve", "g5.col", "--acyclic", "--k", "4", "--witness", "w.txt"]);
    assert_eq!(code(&yes), 0);
    assert_eq!(json(&yes)["decision"], "yes");
    assert!(std::fs::read_to_string(d.join("w.txt")).unwrap().starts_with("k 4\n1 "));
    assert_eq!(code(&run(d, &["solve", "g5.col", "--acyclic", "--k", "3"])), 1);

    write(d, "k23.col", K23);
    let number = run(d, &["--json", "solve", "k23.col", "--number"]);
    assert_eq!(code(&number), 0);
    assert_eq!(json(&number)["chi_a"], 3);
    let starved = run(d, &["solve", "k23.col", "--k", "3", "--node-limit", "0"]);
    assert_eq!(code(&starved), 2);
    assert_eq!(stdout(&starved).trim(), "unknown");
    assert_eq!(code(&run(d, &["solve", "k23.col", "--chromatic", "--k", "2"])), 0);
}

#[test]
fn usage_and_input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["solve"])), 3);
    assert_eq!(code(&run(d, &["frobnicate"])), 3);
    assert_eq!(code(&run(d, &["solve", "missing.col", "--k", "3"])), 3);
    write(d, "bad.col", "p edge 2 1\ne 1 1\n");
    assert_eq!(code(&run(d, &["solve", "bad.col", "--k", "3"])), 3);
    assert_eq!(code(&run(d, &["verify", "no-such-suite"])), 3);
    assert_eq!(code(&run(d, &["--help"])), 0);
}

#[test]
fn count_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k23.col", K23);
    write(d, "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    run(d, &["gen", "chain", "--k", "3", "--t", "2", "--out", "chain"]);
    let c = |args: &[&str]| stdout(&run(d, args)).trim().to_string();
    assert_eq!(c(&["count", "k23.col", "--k", "3", "--relation", "swap", "--kind", "acyclic"]), "1");
    assert_eq!(c(&["count", "p3.col", "--k", "2", "--relation", "swap", "--kind", "proper"]), "1");
    assert_eq!(c(&["count", "chain.col", "--k", "3", "--relation", "swap_auto", "--kind", "acyclic"]), "1");
    let over = run(d, &["count", "k23.col", "--k", "4", "--max-colourings", "3"]);
    assert_eq!(code(&over), 2);
    assert!(stdout(&over).contains("overflow"));
}

#[test]
fn reduce_examples_and_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k2.col", "p edge 2 1\ne 1 2\n");
    write(d, "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let c2 = run(d, &["--json", "reduce", "c2", "k2.col", "--k", "3", "--out", "r2"]);
    assert_eq!(code(&c2), 0);
    assert_eq!(json(&c2)["summary"]["n"], 33);
    let c3 = run(d, &["--json", "reduce", "c3", "p3.col", "--k", "3", "--d", "3", "--out", "r3"]);
    assert_eq!(json(&c3)["summary"]["n"], 36);
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(d.join("r3.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["provenance"].as_array().unwrap().len(), 36);
    run(d, &["gen", "exception", "--name", "k4", "--out", "k4"]);
    let c6 = run(d, &["reduce", "c6", "k4.col", "--q", "1", "--out", "x"]);
    assert_eq!(code(&c6), 3);
    assert!(String::from_utf8_lossy(&c6.stderr).contains("universal vertex"));
    assert_eq!(code(&run(d, &["reduce", "c2", "k2.col", "--out", "x"])), 3);
}

#[test]
fn manifests_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "k23.col", K23);
    for name in ["m1.json", "m2.json"] {
        assert_eq!(code(&run(d, &["solve", "k23.col", "--number", "--manifest", name])), 0);
    }
    let a = std::fs::read_to_string(d.join("m1.json")).unwrap();
    assert_eq!(a, std::fs::read_to_string(d.join("m2.json")).unwrap());
    let m: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(m["outcome"]["chi_a"], 3);
    assert_eq!(m["input_hashes"]["k23.col"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let chain = run(d, &["--json", "verify", "chain-lemma"]);
    assert_eq!(code(&chain), 0);
    let report = json(&chain);
    assert_eq!(report["suite"], "chain-lemma");
    assert!(report["cases"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
    assert_eq!(code(&run(d, &["verify", "c4"])), 0);

    let regime = json(&run(d, &["--json", "bound", "--k", "4", "--d", "6"]));
    assert_eq!(regime["regular_regime"], "always_no");
    assert_eq!(regime["npc_degree_bound"], 20);
    write(d, "k23.col", K23);
    let b = json(&run(d, &["--json", "bound", "k23.col"]));
    assert_eq!(b["bounds"]["density_bound"], "11/5");
    assert_eq!(b["least_admissible_palette"], 3);
}
