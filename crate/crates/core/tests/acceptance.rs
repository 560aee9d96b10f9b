//! Acceptance suite: every verification criterion, one printed line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use icosa_core::checks::{run_all, Check};

const SAMPLES: usize = 100;
const SEED: u64 = 1;
const TOL: f64 = 1e-8;

fn print_line(index: usize, check: &Check) {
    let verdict = if check.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {:2}: {:24} {} ({:.3}s) {}",
        index, check.name, verdict, check.wall_seconds, check.details
    );
}

#[test]
fn acceptance_criteria() {
    let checks = run_all(SAMPLES, SEED, TOL);
    assert_eq!(checks.len(), 12, "twelve criteria expected");
    let mut all_pass = true;
    for (i, check) in checks.iter().enumerate() {
        print_line(i + 1, check);
        all_pass &= check.passed();
    }
    assert!(all_pass, "at least one acceptance criterion failed");
}

/// The spec-level tolerances are pinned here: exact checks take no tolerance
/// knob at all, and the numeric suite must hold at 1e-8 with 100 samples.
#[test]
fn numeric_tolerance_is_pinned() {
    let report = icosa_core::numeric::identity_suite(SAMPLES, SEED, TOL);
    assert!(report.passed());
    assert!(report.max_residual() <= TOL);
}
