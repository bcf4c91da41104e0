//! Acceptance suite: runs every release criterion at its pinned tolerance
//! and prints one PASS/FAIL line per criterion (use `--nocapture` to see
//! the lines for passing tests).
//!
//! The same checks back the `validate` CLI subcommand; see
//! `qfriction::validate` for the tolerances and sampling.

use qfriction::validate;

fn check(report: validate::CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_reflection_identity() {
    check(validate::criterion_1());
}

#[test]
fn criterion_02_bessel_goldens() {
    check(validate::criterion_2());
}

#[test]
fn criterion_03_ky_reduction() {
    check(validate::criterion_3());
}

#[test]
fn criterion_04_two_d_vs_one_d() {
    check(validate::criterion_4());
}

// Known red: at v = 0.02 the exponentially suppressed chiral rate channels
// (values ~1e-3..1e-2 of the dominant ones) pick up an O(gamma_c)
// off-resonant background worth 2.9-4.2% of their size at gamma_c = 1e-4,
// so the 1% bound cannot hold there; meeting it needs gamma_c <~ 3.5e-5.
// All force channels and all other rates are within 1% (worst 0.80%).
// The check is kept at its stated tolerance rather than loosened.
#[test]
fn criterion_05_lossless_limit() {
    check(validate::criterion_5());
}

#[test]
fn criterion_06_sign_positivity() {
    check(validate::criterion_6());
}

#[test]
fn criterion_07_chirality() {
    check(validate::criterion_7());
}

#[test]
fn criterion_08_scaling_laws() {
    check(validate::criterion_8());
}

#[test]
fn criterion_09_dissipation_crossover() {
    check(validate::criterion_9());
}

#[test]
fn criterion_10_dynamics() {
    check(validate::criterion_10());
}

#[test]
fn criterion_11_imaginary_axis_symmetry() {
    check(validate::criterion_11());
}

#[test]
fn criterion_12_performance_envelope() {
    check(validate::criterion_12());
}
