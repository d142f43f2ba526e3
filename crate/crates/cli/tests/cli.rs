use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperoval-lab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = lab(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn hyperoval_k6_e3() {
    let (code, v) = json(&["hyperoval", "--k", "6", "--e", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "hyperoval-lab/1");
    assert_eq!(v["hyperoval"], true);
    assert_eq!(v["k"], 6);
    assert_eq!(v["method"], "perm");
}

#[test]
fn hyperoval_witness_with_determinant() {
    let (code, v) = json(&["hyperoval", "--k", "6", "--e", "2", "--method", "det"]);
    assert_eq!(code, 0);
    assert_eq!(v["hyperoval"], false);
    assert_eq!(v["witness"], serde_json::json!(["0b1", "0b10", "0b11"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lab(&["hyperoval", "--k", "7", "--e", "3"]).status.code(), Some(2));
    assert_eq!(lab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(lab(&["hyperoval", "--k", "6"]).status.code(), Some(2));
    assert_eq!(lab(&["verify-segre", "--k", "10"]).status.code(), Some(2));
    assert_eq!(lab(&["fields", "--dump", "--e", "20"]).status.code(), Some(2));
}

#[test]
fn verify_segre_k6() {
    let (code, v) = json(&["verify-segre", "--k", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["product_matches"], true);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn inequality_scan_rows() {
    let (code, v) = json(&["inequality-scan", "--i-max", "5", "--ell-max", "9"]);
    assert_eq!(code, 0);
    let np: Vec<(u64, u64)> = v["non_positive"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_u64().unwrap(), p[1].as_u64().unwrap()))
        .collect();
    // at i = 1 the expression is -(ell-1)(ell-3), so every ell >= 3 is listed
    assert!(np.contains(&(1, 3)) && np.contains(&(1, 9)));
    assert!(np.iter().all(|&(i, ell)| ell == 1 || i == 1));
}

#[test]
fn scan_csv_columns() {
    let out = lab(&["scan", "--k-max", "6", "--e-max", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "k,e,hyperoval,note");
    assert_eq!(lines.len(), 1 + 3 * 3);
    assert!(lines.contains(&"6,3,true,"));
    assert!(lines.contains(&"6,2,false,"));
}

#[test]
fn curve_report_text_table() {
    let out = lab(&["curve-report", "--k", "12", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("Number of Points"));
    assert!(s.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["III", "2", "2", "4", "4"]));
}

#[test]
fn factor_verdicts() {
    let (code, v) = json(&["factor", "--k", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"], "A");
    let (_, v) = json(&["factor", "--k", "6"]);
    assert_eq!(v["class"], "C");
    assert_eq!(v["tree"]["base_factors"][0]["r"], 2);
    let (code, v) = json(&["factor", "--k", "6", "--ext", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["factorization"]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn bezout_for_g6() {
    let (code, v) = json(&["bezout", "--k", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["audit"]["within_total"], 4);
    assert_eq!(v["audit"]["ok"], true);
}

#[test]
fn weil_threshold_for_k10() {
    let (code, v) = json(&["weil", "--k", "10", "--e-max", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["e0"], 11);
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("hyperoval-lab-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bezout.json");
    let p = path.to_str().unwrap();
    let a = lab(&["bezout", "--k", "8", "--threads", "1", "--out", p]);
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    let b = lab(&["bezout", "--k", "8", "--threads", "3"]);
    assert_eq!(first, b.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fields_table() {
    let (_, v) = json(&["fields", "--e-max", "3"]);
    let rows = v["fields"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["modulus"], "0b111");
    let (_, v) = json(&["fields", "--dump", "--e", "3"]);
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_paper_reports_every_check() {
    let out = lab(&["verify-paper", "--k-max", "12", "--e-max", "8", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 13);
    let failed: Vec<u64> = v["failed"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let expected = if failed.is_empty() { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
    if !failed.is_empty() {
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains(&format!("criterion {}", failed[0])));
    }
}
