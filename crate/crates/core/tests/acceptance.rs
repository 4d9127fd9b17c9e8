//! The acceptance suite: one test per criterion, each printing its pass/fail
//! line. `cargo test --test acceptance` is the verification gate; the same
//! criteria run behind the CLI `suite` verb.

use reedykit::suite::{run_criterion, SuiteConfig};

fn run(id: u32) {
    let config = SuiteConfig::default();
    let result = run_criterion(&config, id);
    println!(
        "[{}] criterion {:>2} {:<24} ({} ms) {}",
        if result.passed { "PASS" } else { "FAIL" },
        result.id,
        result.name,
        result.millis,
        result.details
    );
    assert!(
        result.passed,
        "criterion {} ({}) failed: {}",
        result.id, result.name, result.details
    );
}

#[test]
fn criterion_01_axiom_suite() {
    run(1);
}

#[test]
fn criterion_02_strictness() {
    run(2);
}

#[test]
fn criterion_03_crossed_identities() {
    run(3);
}

#[test]
fn criterion_04_crossed_round_trip() {
    run(4);
}

#[test]
fn criterion_05_kan_consistency() {
    run(5);
}

#[test]
fn criterion_06_skeletal_calculus() {
    run(6);
}

#[test]
fn criterion_07_ez_suite() {
    run(7);
}

#[test]
fn criterion_08_standard_decompositions() {
    run(8);
}

#[test]
fn criterion_09_skeleton_image() {
    run(9);
}

#[test]
fn criterion_10_normal_mono_three_way() {
    run(10);
}

#[test]
fn criterion_11_pushout_product() {
    run(11);
}

#[test]
fn criterion_12_restriction_comparisons() {
    run(12);
}
