use std::process::{Command, Output};

use dellip_core::ChowClass;

fn dellip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dellip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn class_text() {
    let o = dellip(&["class", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("x=6 y=24\n"));
    let o = dellip(&["class", "--d", "1"]);
    assert!(stdout(&o).starts_with("x=0 y=0\n"));
}

#[test]
fn class_json() {
    let o = dellip(&["class", "--d", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], 3);
    assert_eq!(v["x"], "32/1");
    assert_eq!(v["y"], "96/1");
    assert_eq!(v["class"]["d0"], "32/1");
}

#[test]
fn chow_json_roundtrips_byte_identically() {
    let o = dellip(&["class", "--d", "7"]);
    let line = stdout(&o).lines().nth(1).unwrap().to_owned();
    let parsed: ChowClass = serde_json::from_str(&line).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
}

#[test]
fn a_table_csv() {
    let o = dellip(&["a-table", "--d-max", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d,a,b\n1,0,0\n2,15,15\n3,80,80\n");
}

#[test]
fn table_rows_are_ordered_by_d() {
    let o = dellip(&["table", "--d-max", "50", "--format", "csv"]);
    let ds: Vec<u64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ds, (1..=50).collect::<Vec<_>>());
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn census_json() {
    let o = dellip(&["census", "--d", "4", "--type", "3C", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["type"], "3C");
    assert_eq!(v[0]["total"], "42");
}

#[test]
fn qcheck_reports_printed_forms_as_flagged() {
    let o = dellip(&["qcheck", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("ramanujan ODE residual: zero"));
    assert!(s.contains("T1 = (-11/60)·1 + (1/6)·E2 + (1/60)·E4"));
    assert!(s.contains("printed T0 [flagged]: differs"));
}

#[test]
fn verify_all_passes_and_degenerate_run_passes() {
    let o = dellip(&["verify-all", "--d-max", "60", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = dellip(&["verify-all", "--d-max", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn injected_fault_exits_one_with_failure_record() {
    let o = dellip(&["verify-all", "--d-max", "10", "--order", "10", "--inject-fault", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<_> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| !s["failures"].as_array().unwrap().is_empty())
        .map(|s| s["name"].as_str().unwrap().to_owned())
        .collect();
    assert!(failed.contains(&"ring".to_owned()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dellip(&["class", "--d", "0"]).status.code(), Some(2));
    assert_eq!(dellip(&["class", "--d", "two"]).status.code(), Some(2));
    assert_eq!(dellip(&["qcheck", "--order", "7"]).status.code(), Some(2));
    assert_eq!(dellip(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    let o = dellip(&["a-table", "--d-max", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "d,a,b\n1,0,0\n2,15,15\n");
}
