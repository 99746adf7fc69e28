use std::path::PathBuf;
use std::process::{Command, Output};

use lapsim_core::analysis::PropertyReport;
use serde_json::Value;

fn lapsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapsim"))
        .args(args)
        .env_remove("LAPSIM_FPP_CAP")
        .env_remove("LAPSIM_IDP_CAP")
        .env_remove("LAPSIM_BOX_CAP")
        .env_remove("LAPSIM_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(args: &[&str]) -> Value {
    let o = lapsim(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn cycle_five_report() {
    let v = json_report(&["--family", "cycle", "--n", "5", "--format", "json", "report"]);
    assert_eq!(v["hstar"], serde_json::json!([1, 1, 21, 1, 1]));
    assert_eq!(v["reflexive"], true);
    assert_eq!(v["strategy"], "cycle_closed_form");
    assert_eq!(v["graph"]["n"], 5);
}

#[test]
fn complete_four_report() {
    let v = json_report(&["--family", "complete", "--n", "4", "--format", "json", "report"]);
    assert_eq!(v["hstar"], serde_json::json!([1, 31, 31, 1]));
    assert_eq!(v["idp"], true);
}

#[test]
fn cycle_four_is_two_reflexive() {
    let v = json_report(&["--family", "cycle", "--n", "4", "--format", "json", "report"]);
    assert_eq!(v["reflexive"], false);
    assert_eq!(v["ell"], 2);
    assert_eq!(v["symmetric"], false);
}

#[test]
fn report_json_round_trips() {
    let o = lapsim(&["--family", "cycle", "--n", "6", "--whisker", "--format", "json", "report"]);
    let text = stdout(&o);
    let r: PropertyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), text.trim_end());
    assert_eq!(r.id.as_deref(), Some("cycle-6+whisker"));
    assert!(r.reflexive);
}

#[test]
fn forced_strategy_is_reported() {
    let v = json_report(&["--family", "cycle", "--n", "5", "--strategy", "generic_snf", "--format", "json", "report"]);
    assert_eq!(v["strategy"], "generic_snf");
    assert_eq!(v["hstar"], serde_json::json!([1, 1, 21, 1, 1]));
    let o = lapsim(&["--family", "cycle", "--n", "4", "--strategy", "cycle_closed_form", "report"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_of_cycles() {
    let o = lapsim(&["--family", "cycle", "batch", "--ns", "3..9"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 7);
    for (row, n) in rows.iter().zip(3..) {
        assert_eq!(row[1], n.to_string());
        assert_eq!(row[5], (n % 2 == 1).to_string(), "C_{n}");
    }
}

#[test]
fn batch_of_random_trees() {
    let o = lapsim(&["--family", "random_tree", "batch", "--ns", "5", "--samples", "10"]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 10);
    let ids: std::collections::BTreeSet<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids.len(), 10);
    assert!(rows.iter().all(|r| r[4] == "1;1;1;1;1"));
}

#[test]
fn batch_of_whiskered_cycles() {
    let o = lapsim(&["--family", "cycle", "--whisker", "batch", "--ns", "4,6"]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[5] == "true"));
}

#[test]
fn batch_records_row_errors_and_continues() {
    let o = lapsim(&["--family", "cycle", "batch", "--ns", "2..4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 3);
    assert!(rows[0][10].contains("n >= 3"));
    assert_eq!(rows[1][4], "1;7;1");
}

#[test]
fn output_is_deterministic() {
    let args = ["--family", "random_tree", "--seed", "42", "batch", "--ns", "4..7", "--samples", "3"];
    let a = lapsim(&args);
    let b = lapsim(&[&args[..], &["--jobs", "1"]].concat());
    let c = lapsim(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let r1 = lapsim(&["--family", "complete", "--n", "5", "--format", "json", "report"]);
    let r2 = lapsim(&["--family", "complete", "--n", "5", "--format", "json", "report"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn caps_leave_fields_empty() {
    let o = Command::new(env!("CARGO_BIN_EXE_lapsim"))
        .args(["--family", "cycle", "--n", "6", "--format", "json", "report"])
        .env("LAPSIM_FPP_CAP", "10")
        .env("LAPSIM_IDP_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["hstar"], Value::Null);
    assert_eq!(v["idp"], Value::Null);
    assert_eq!(v["volume"], 36);
    let v = json_report(&["--family", "cycle", "--n", "6", "--idp-cap", "10", "--format", "json", "report"]);
    assert_eq!(v["idp"], Value::Null);
    assert!(v["hstar"].is_array());
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("lapsim-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn edge_list_input() {
    let path = temp_file("c5.txt", "# five-cycle\n5 5\n1 2\n2 3\n3 4\n4 5\n1 5\n");
    let v = json_report(&["--input", path.to_str().unwrap(), "--format", "json", "report"]);
    assert_eq!(v["hstar"], serde_json::json!([1, 1, 21, 1, 1]));

    let bad = temp_file("bad.txt", "3 2\n1 2\n3 2\n");
    let o = lapsim(&["--input", bad.to_str().unwrap(), "report"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(lapsim(&["report"]).status.code(), Some(2));
    assert_eq!(lapsim(&["--family", "cycle", "report"]).status.code(), Some(2));
    assert_eq!(lapsim(&["--family", "blob", "--n", "4", "report"]).status.code(), Some(2));
    assert_eq!(lapsim(&["--family", "cycle", "--n", "4", "--bridge-with", "cycle:5", "report"]).status.code(), Some(2));
    assert_eq!(lapsim(&["--input", "/nonexistent/graph.txt", "report"]).status.code(), Some(2));
    assert_eq!(lapsim(&["--family", "cycle", "--n", "4", "--fpp-cap", "0", "report"]).status.code(), Some(2));
}

#[test]
fn graph_operations_compose() {
    let v = json_report(&["--family", "cycle", "--n", "3", "--bridge-with", "complete:3", "--format", "json", "report"]);
    assert_eq!(v["n"], 6);
    assert_eq!(v["kappa"], 9);
    assert_eq!(v["reflexive"], true);
    let v = json_report(&["--family", "cycle", "--n", "4", "--attach-path", "2:3", "--format", "json", "report"]);
    assert_eq!(v["n"], 7);
    assert_eq!(v["kappa"], 4);
}

#[test]
fn verify_paper_passes() {
    let o = lapsim(&["verify-paper"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("PASS cycle-5-hstar"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_paper_without_fast_paths() {
    let o = lapsim(&["verify-paper", "--no-fast-paths"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_paper_filter() {
    let o = lapsim(&["verify-paper", "--only", "cycles"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let names: Vec<&str> = out.lines().filter_map(|l| l.strip_prefix("PASS ")).collect();
    assert!(!names.is_empty());
    assert!(names.iter().all(|n| n.starts_with("cycle-")), "{names:?}");
}

#[test]
fn verify_paper_detects_a_skewed_tree_count() {
    let o = lapsim(&["verify-paper", "--inject-fault", "kappa"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL cycle-5-hstar"), "{out}");
    assert!(out.contains("n*kappa"));
}
