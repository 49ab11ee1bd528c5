use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn addlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_eta_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let o = addlab(&["solve", "eta", "--graph", &p3, "--json"]);
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["value"], 1);
    assert_eq!(v["status"], "found");
}

#[test]
fn infeasible_and_budget_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.col", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    assert_eq!(code(&addlab(&["solve", "binary", "--graph", &c5, "--json"])), 1);
    assert_eq!(code(&addlab(&["solve", "eta1", "--graph", &c5])), 1);
    let o = addlab(&["solve", "eta", "--graph", &c5, "--budget-nodes", "1", "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json_lines(&o)[0]["status"], "budget-exceeded");
    assert_eq!(code(&addlab(&["solve", "sigma", "--graph", &c5, "--json"])), 0);
    // Neighbor counts on C5 would have to 2-color an odd cycle.
    assert_eq!(code(&addlab(&["solve", "ptds", "--graph", &c5, "--json"])), 1);
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.col", "p edge 2 1\ne 1 3\n");
    let o = addlab(&["solve", "eta", "--graph", &bad]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.col: line 2"), "{err}");
    assert_eq!(code(&addlab(&["solve", "eta", "--graph", "/nonexistent.col"])), 2);
    assert_eq!(code(&addlab(&["solve", "nonsense"])), 2);
}

#[test]
fn verify_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.col", "p edge 2 1\ne 1 2\n");
    let good = write(dir.path(), "good.lab", "v 1 1\nv 2 2\n");
    let bad = write(dir.path(), "bad.lab", "v 1 2\nv 2 2\n");
    let lists = write(dir.path(), "l.txt", "l 1 1\nl 2 3\n");
    assert_eq!(code(&addlab(&["verify", "labeling", "--graph", &k2, "--labeling", &good])), 0);
    assert_eq!(code(&addlab(&["verify", "labeling", "--graph", &k2, "--labeling", &bad])), 1);
    let o = addlab(&["verify", "lists", "--graph", &k2, "--labeling", &good, "--lists", &lists, "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_lines(&o)[0]["from_lists"], false);
    let p3 = write(dir.path(), "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let set = write(dir.path(), "set.lab", "v 1 1\nv 2 1\nv 3 1\n");
    assert_eq!(code(&addlab(&["verify", "ptds", "--graph", &p3, "--labeling", &set])), 0);
}

#[test]
fn list_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.col", "p edge 2 1\ne 1 2\n");
    let same = write(dir.path(), "same.txt", "l 1 4\nl 2 4\n");
    let two = write(dir.path(), "two.txt", "l 1 1 2\nl 2 1 2\n");
    let o = addlab(&["refute-lists", "--graph", &k2, "--lists", &same, "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_lines(&o)[0]["status"], "refuted");
    assert_eq!(code(&addlab(&["refute-lists", "--graph", &k2, "--lists", &two])), 0);
    assert_eq!(code(&addlab(&["solve", "listdecide", "--graph", &k2, "--lists", &two])), 0);
    let short = write(dir.path(), "short.txt", "l 1 1\n");
    assert_eq!(code(&addlab(&["refute-lists", "--graph", &k2, "--lists", &short])), 2);
}

#[test]
fn construct_writes_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let out = dir.path().join("g.col");
    let prov = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let o = addlab(&[
        "reduce", "sat", "--cnf", &cnf, "--check", "--json",
        "--out", out.to_str().unwrap(), "--provenance", prov.to_str().unwrap(), "--dot", dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["triangle_free"], true);
    assert_eq!(v["verdict"]["agree"], true);
    let g = addlab::Graph::from_dimacs(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["n"], g.n());
    let p: Value = serde_json::from_str(&fs::read_to_string(&prov).unwrap()).unwrap();
    assert_eq!(p["vertices"].as_object().unwrap().len(), g.n());
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
}

#[test]
fn construct_prints_dimacs_by_default() {
    let o = addlab(&["construct", "clique-example", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let g = addlab::Graph::from_dimacs(&String::from_utf8_lossy(&o.stdout)).unwrap();
    assert_eq!(g.n(), 6);
    let o = addlab(&["construct", "clique-example", "--k", "3", "--verify", "--json"]);
    assert_eq!(json_lines(&o)[0]["verification"]["passed"], true);
}

#[test]
fn construct_gadgets_and_reductions() {
    let o = addlab(&["construct", "gadget", "--kind", "clause", "--literals", "1,-2,3", "--verify", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["certification"]["passed"], true);
    let o = addlab(&["construct", "gadget", "--kind", "vertex", "--list", "2", "--s", "3", "--json"]);
    assert_eq!(json_lines(&o)[0]["certified_at_build"], true);
    assert_eq!(code(&addlab(&["construct", "gadget", "--kind", "amplifier"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.col", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let o = addlab(&["construct", "inapprox", "--graph", &k3, "--d", "16", "--check", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["verdict"]["reduction"], "yes");
    let lists = write(dir.path(), "l.txt", "l 1 1 2\nl 2 1 2\nl 3 1 2\n");
    let o = addlab(&["construct", "listcolor", "--graph", &k3, "--lists", &lists, "--check", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["verdict"]["oracle"], "no");
}

#[test]
fn sweeps_require_a_seed() {
    assert_eq!(code(&addlab(&["check", "sat"])), 2);
    assert_eq!(code(&addlab(&["bounds", "--sweep", "3"])), 2);
    let o = addlab(&["bounds", "--sweep", "5", "--seed", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[5]["failed"], 0);
}

#[test]
fn single_instance_checks() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let o = addlab(&["check", "sat", "--cnf", &cnf, "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["oracle"], "no");
}
