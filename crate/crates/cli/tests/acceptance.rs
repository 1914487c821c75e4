//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Criterion 9 additionally runs the installed binary twice and
//! compares report files byte for byte.

use epg_core::selftest::{self, CriterionOutcome};
use std::process::Command;

fn assert_pass(outcome: CriterionOutcome) {
    println!("{}", outcome.line());
    assert!(outcome.pass, "{}", outcome.line());
}

fn assert_pass_within(outcome: CriterionOutcome, started: std::time::Instant, budget_s: u64) {
    let elapsed = started.elapsed();
    println!("{}  [{}ms]", outcome.line(), elapsed.as_millis());
    assert!(outcome.pass, "{}", outcome.line());
    assert!(
        elapsed.as_secs() <= budget_s,
        "criterion {} exceeded its {budget_s}s budget ({}s)",
        outcome.index,
        elapsed.as_secs()
    );
}

#[test]
fn criterion_1_k_oracle_agreement() {
    let t = std::time::Instant::now();
    assert_pass_within(selftest::criterion_1(), t, 60);
}

#[test]
fn criterion_2_characterization_sweep() {
    let t = std::time::Instant::now();
    assert_pass_within(selftest::criterion_2(), t, 300);
}

#[test]
fn criterion_3_named_groups() {
    assert_pass(selftest::criterion_3());
}

#[test]
fn criterion_4_quaternion_sylow_trichotomy() {
    assert_pass(selftest::criterion_4());
}

#[test]
fn criterion_5_diameter_two_equivalence() {
    let t = std::time::Instant::now();
    assert_pass_within(selftest::criterion_5(), t, 300);
}

#[test]
fn criterion_6_automorphism_two_group() {
    assert_pass(selftest::criterion_6());
}

#[test]
fn criterion_7_k_subgroup_facts() {
    assert_pass(selftest::criterion_7());
}

#[test]
fn criterion_8_graph_oracle_equivalence() {
    assert_pass(selftest::criterion_8());
}

#[test]
fn criterion_9_report_determinism() {
    assert_pass(selftest::criterion_9());

    // Binary-level determinism: two full runs of the CLI write identical
    // bytes.
    let dir = std::env::temp_dir().join(format!("epg-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |path: &std::path::Path| {
        let status = Command::new(env!("CARGO_BIN_EXE_epg"))
            .args([
                "verify-a",
                "--max-order",
                "96",
                "--report",
                path.to_str().unwrap(),
            ])
            .status()
            .expect("binary runs");
        assert!(status.success(), "verify-a failed");
    };
    let (p1, p2) = (dir.join("r1.jsonl"), dir.join("r2.jsonl"));
    run(&p1);
    run(&p2);
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert!(!b1.is_empty());
    assert_eq!(b1, b2, "verify-a reports differ between runs");
    println!(
        "criterion 9 (binary determinism): PASS — {} bytes identical across runs",
        b1.len()
    );
    std::fs::remove_dir_all(&dir).ok();
}
