//! One test per numbered criterion; each prints a PASS or FAIL line.

use hyperoval_core::verify::{run_criterion, VerifyConfig, CRITERIA};

fn check(id: u32) {
    let r = run_criterion(id, &VerifyConfig::default()).unwrap();
    println!("criterion {:>2} {:<34} {}  {}", r.id, r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
    assert!(r.passed, "criterion {id} failed: {}", r.detail);
}

#[test]
fn criteria_are_numbered() {
    assert_eq!(CRITERIA.iter().map(|c| c.0).collect::<Vec<_>>(), (1..=13).collect::<Vec<_>>());
}

#[test]
fn c01_segre_power_law() {
    check(1);
}

#[test]
fn c02_segre_six_law() {
    check(2);
}

#[test]
fn c03_cross_oracle() {
    check(3);
}

#[test]
fn c04_construction_identity() {
    check(4);
}

#[test]
fn c05_reductions_and_degenerate_points() {
    check(5);
}

#[test]
fn c06_singular_table() {
    check(6);
}

#[test]
fn c07_tangent_lemmas() {
    check(7);
}

#[test]
fn c08_explicit_factorizations() {
    check(8);
}

#[test]
fn c09_bezout_audits() {
    check(9);
}

#[test]
fn c10_verdicts() {
    check(10);
}

#[test]
fn c11_weil_threshold() {
    check(11);
}

#[test]
fn c12_inequality_scans() {
    check(12);
}

#[test]
fn c13_intersection_axioms() {
    check(13);
}
