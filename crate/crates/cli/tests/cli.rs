//! End-to-end tests of the command-line interface: output formats, exit
//! codes, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pswsat::{auto_decomposition, emit_decomposition, parse_cnf, AutoStrategy};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pswsat"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_contradiction_prints_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "contradiction.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let out = run(&["count", cnf.to_str().unwrap(), "--auto", "file-order"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn count_defaults_to_greedy_and_scales_with_all_vars() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 4 1\n1 2 0\n");
    let out = run(&["count", cnf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3\n");
    let out = run(&["count", cnf.to_str().unwrap(), "--all-vars"]);
    assert_eq!(stdout(&out), "12\n");
}

#[test]
fn count_handles_huge_results_exactly() {
    // no clauses over 130 declared variables: exactly 2^130 assignments
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "empty.cnf", "p cnf 130 0\n");
    let out = run(&["count", cnf.to_str().unwrap(), "--all-vars"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1361129467683753853853498429727072845824\n");
}

#[test]
fn maxsat_prints_weight_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let wcnf = write(dir.path(), "two_unit.wcnf", "p wcnf 1 2\n5 1 0\n7 -1 0\n");
    let out = run(&["maxsat", wcnf.to_str().unwrap(), "--auto", "file-order"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "o 7\nv -1\n");
}

#[test]
fn maxsat_witness_lists_all_declared_variables() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 3 2\n1 0\n2 0\n");
    let out = run(&["maxsat", cnf.to_str().unwrap(), "--auto", "file-order"]);
    assert_eq!(stdout(&out), "o 2\nv 1 2 -3\n");
}

#[test]
fn maxsat_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 3 3\n1 -2 0\n2 3 0\n-1 0\n");
    let a = run(&["maxsat", cnf.to_str().unwrap()]);
    let b = run(&["maxsat", cnf.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn psw_reports_width_and_verbose_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 1 1\n1 0\n");
    let ord = write(dir.path(), "f.ord", "v1 c0\n");
    let out = run(&[
        "psw",
        cnf.to_str().unwrap(),
        "--order",
        ord.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2\n");

    let out = run(&[
        "psw",
        cnf.to_str().unwrap(),
        "--order",
        ord.to_str().unwrap(),
        "--verbose",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2"));
    // one tab-separated row per node
    assert_eq!(lines.clone().count(), 3);
    assert!(lines.all(|l| l.split('\t').count() == 3));
}

#[test]
fn psw_accepts_decomposition_files() {
    let dir = tempfile::tempdir().unwrap();
    let text = "p cnf 2 2\n1 2 0\n-1 0\n";
    let cnf = write(dir.path(), "f.cnf", text);
    let f = parse_cnf(text).unwrap();
    let d = auto_decomposition(&f, AutoStrategy::GreedyPs).unwrap();
    let decomp = write(dir.path(), "f.dec", &emit_decomposition(&d));
    let out = run(&[
        "psw",
        cnf.to_str().unwrap(),
        "--decomp",
        decomp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let width: usize = stdout(&out).trim().parse().unwrap();
    assert!(width >= 1);
}

#[test]
fn order_verify_valid_and_violating() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 2 2\n1 0\n2 0\n");
    let good = write(dir.path(), "good.ord", "v1 c0 v2 c1\n");
    let bad = write(dir.path(), "bad.ord", "v1 v2 c0 c1\n");

    let out = run(&[
        "order",
        "verify",
        cnf.to_str().unwrap(),
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "VALID\n");

    let out = run(&[
        "order",
        "verify",
        cnf.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out), "VIOLATION v1 c0 v2\n");
}

#[test]
fn order_find_prints_ordering_or_none() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 1 1\n1 0\n");
    let out = run(&["order", "find", cnf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let found = stdout(&out);
    let tokens: Vec<&str> = found.split_whitespace().collect();
    assert_eq!(tokens.len(), 2);

    // feeding the found ordering back verifies
    let ord = write(dir.path(), "found.ord", &found);
    let out = run(&[
        "order",
        "verify",
        cnf.to_str().unwrap(),
        ord.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "VALID\n");

    // a six-cycle incidence graph admits no interval ordering
    let cycle = write(dir.path(), "cycle.cnf", "p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n");
    let out = run(&["order", "find", cycle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NONE\n");
}

#[test]
fn order_find_respects_the_limit() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 4 4\n1 0\n2 0\n3 0\n4 0\n");
    let out = run(&["order", "find", cnf.to_str().unwrap(), "--limit", "5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn mim_prints_per_node_rows_and_max() {
    let dir = tempfile::tempdir().unwrap();
    let text = "p cnf 2 2\n1 2 0\n-1 0\n";
    let cnf = write(dir.path(), "f.cnf", text);
    let f = parse_cnf(text).unwrap();
    let d = auto_decomposition(&f, AutoStrategy::FileOrder).unwrap();
    let decomp = write(dir.path(), "f.dec", &emit_decomposition(&d));
    let out = run(&[
        "mim",
        cnf.to_str().unwrap(),
        "--decomp",
        decomp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), d.num_nodes() + 1);
    assert!(lines.last().unwrap().starts_with("max "));
}

#[test]
fn exit_codes_for_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    // unreadable formula: parse error
    let broken = write(dir.path(), "broken.cnf", "p cnf x y\n");
    let out = run(&["count", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // conflicting decomposition sources: usage error
    let cnf = write(dir.path(), "f.cnf", "p cnf 1 1\n1 0\n");
    let dec = write(
        dir.path(),
        "f.dec",
        "nodes 3\nroot 0\nedge 0 1\nedge 0 2\nleaf 1 v1\nleaf 2 c0\n",
    );
    let ord = write(dir.path(), "f.ord", "v1 c0\n");
    let out = bin()
        .args(["count", cnf.to_str().unwrap()])
        .args(["--decomp", dec.to_str().unwrap()])
        .args(["--order", ord.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // damaged decomposition: invalid-input error
    let bad_dec = write(
        dir.path(),
        "bad.dec",
        "nodes 2\nroot 0\nedge 0 1\nleaf 1 v1\n",
    );
    let out = run(&[
        "count",
        cnf.to_str().unwrap(),
        "--decomp",
        bad_dec.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    // unknown strategy: usage error
    let out = run(&["count", cnf.to_str().unwrap(), "--auto", "sideways"]);
    assert_eq!(out.status.code(), Some(1));

    // solving with an ordering that is not an interval ordering: invalid
    let two = write(dir.path(), "two.cnf", "p cnf 2 2\n1 0\n2 0\n");
    let bad_ord = write(dir.path(), "bad.ord", "v1 v2 c0 c1\n");
    let out = run(&[
        "count",
        two.to_str().unwrap(),
        "--order",
        bad_ord.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn degenerate_formulas_are_answered_without_a_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.cnf", "p cnf 2 0\n");
    let out = run(&["count", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");

    let out = run(&["maxsat", empty.to_str().unwrap()]);
    assert_eq!(stdout(&out), "o 0\nv -1 -2\n");

    let lone = write(dir.path(), "lone.cnf", "p cnf 0 1\n0\n");
    let out = run(&["count", lone.to_str().unwrap()]);
    assert_eq!(stdout(&out), "0\n");

    // the bypass applies before any decomposition source is resolved
    let ord = write(dir.path(), "lone.ord", "c0\n");
    let out = run(&[
        "count",
        lone.to_str().unwrap(),
        "--order",
        ord.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");

    let out = run(&["maxsat", lone.to_str().unwrap()]);
    assert_eq!(stdout(&out), "o 0\nv\n");
}

#[test]
fn count_accepts_weighted_files() {
    let dir = tempfile::tempdir().unwrap();
    let wcnf = write(dir.path(), "w.wcnf", "p wcnf 2 2 10\n5 1 2 0\n5 -1 0\n");
    let out = run(&["count", wcnf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // only x1=0, x2=1 satisfies both clauses
    assert_eq!(stdout(&out), "1\n");
}
