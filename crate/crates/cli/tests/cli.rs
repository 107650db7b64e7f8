use std::path::Path;
use std::process::{Command, Output};

fn lowdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowdisc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn isbn_valid_and_invalid() {
    let ok = lowdisc(&["isbn", "0-521-39231-4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("valid"));
    assert_eq!(lowdisc(&["isbn", "0-521-39231-5"]).status.code(), Some(1));
}

#[test]
fn zaremba_table_has_all_rows() {
    let o = lowdisc(&["zaremba", "--base", "2", "--mmax", "20", "--c", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| !r.split(',').nth(2).unwrap().is_empty()));
}

#[test]
fn generated_niederreiter_net_verifies_with_t_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let g = lowdisc(&["--out", path(&out), "gen", "niederreiter", "--b", "3", "--s", "3", "--m", "4"]);
    assert_eq!(g.status.code(), Some(0), "{}", String::from_utf8_lossy(&g.stderr));
    let csv = out.join("points.csv");
    let v = lowdisc(&["--json", "verify", path(&csv), "--b", "3", "--m", "4"]);
    assert_eq!(v.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["t_geometric"], 0);
    assert_eq!(report["t_dual"], 0);
    assert_eq!(report["n"], 81);
}

#[test]
fn later_sequence_block_is_a_net() {
    let dir = tempfile::tempdir().unwrap();
    let g = lowdisc(&["--out", path(dir.path()), "gen", "niederreiter", "--b", "2", "--s", "2", "--m", "5", "--block", "2"]);
    assert_eq!(g.status.code(), Some(0));
    let v = lowdisc(&["--json", "verify", path(&dir.path().join("points.csv")), "--b", "2", "--m", "5"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["t_geometric"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lowdisc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lowdisc(&["gen"]).status.code(), Some(2));
    assert_eq!(lowdisc(&["p2", "--n", "x"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one_with_json() {
    let o = lowdisc(&["factor", "--p", "4", "--poly", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["error"]["kind"], "algebra");

    let o = lowdisc(&["--json", "p2", "--a", "1,3", "--n", "8", "--alpha", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["error"]["kind"], "quality");
}

#[test]
fn manifests_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = lowdisc(&["--out", path(&out), "gen", "halton", "--bases", "2,3", "--n", "100"]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out.join("manifest.json")).unwrap()
    };
    let a = run("a");
    assert_eq!(a, run("b"));
    let manifest: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = |k: &'static str| vec!["--threads", k, "--json", "inversive-audit", "--qmax", "31"];
    let one = lowdisc(&args("1"));
    let four = lowdisc(&args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let one = lowdisc(&["--threads", "1", "cmsweep", "--qmax", "23"]);
    let four = lowdisc(&["--threads", "4", "cmsweep", "--qmax", "23"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn factor_reports_verified_factors() {
    let o = lowdisc(&["--json", "factor", "--p", "2", "--poly", "1,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["verified"], true);
    // x^4 + 1 = (x + 1)^4 over F_2
    assert_eq!(body["factors"][0]["multiplicity"], 4);
}

#[test]
fn exact_discrepancy_of_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let g = lowdisc(&["--out", path(dir.path()), "gen", "lattice", "--a", "1,3", "--n", "8"]);
    assert_eq!(g.status.code(), Some(0));
    let csv = dir.path().join("points.csv");
    let d = lowdisc(&["--json", "discrepancy", path(&csv)]);
    let body: serde_json::Value = serde_json::from_str(&stdout(&d)).unwrap();
    assert_eq!(body["mode"], "exact");
    let s = lowdisc(&["--json", "discrepancy", path(&csv), "--samples", "1000", "--seed", "7"]);
    let lb: serde_json::Value = serde_json::from_str(&stdout(&s)).unwrap();
    assert!(lb["lower_bound"].as_f64().unwrap() <= body["value"].as_f64().unwrap() + 1e-12);
}

#[test]
fn reproduce_single_criterion() {
    let o = lowdisc(&["reproduce", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS] criterion  1"));
    assert_eq!(lowdisc(&["reproduce", "12"]).status.code(), Some(1));
}
