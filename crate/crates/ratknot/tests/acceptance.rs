//! Acceptance suite: one test per criterion, pinned to the stated case
//! counts, exact comparisons, and wall-clock budgets. Run with
//! `cargo test --test acceptance` (add `-- --nocapture` for the per-suite
//! statistics).

use std::time::Duration;

use ratknot::verify::{
    criterion_alexander_corollary, criterion_f_recursion_vs_brute, criterion_ftilde_vs_brute,
    criterion_golden_f22, criterion_named_knots, criterion_numerator_count,
    criterion_poset_orientation, criterion_segment_invariants, criterion_skein_extension,
    criterion_theorem_vs_oracle, deterministic_sweep, full_sweep, SuiteResult, VerifyConfig,
};

fn spec_config() -> VerifyConfig {
    // the pinned sweep sizes: p <= 100, entries {+-2,+-4} with
    // n <= 5 (1,364 cases), 200 seeded random even CFs with |b_i| <= 8, n <= 8
    VerifyConfig::default()
}

fn expect_pass(criterion: &str, result: &SuiteResult) {
    println!(
        "{criterion} [{}]: {} ({} cases, {:.2}s)",
        result.name,
        if result.passed() { "PASS" } else { "FAIL" },
        result.cases,
        result.duration.as_secs_f64()
    );
    assert!(result.passed(), "{criterion} failed: {:?}", result.failures);
}

#[test]
fn criterion_1_golden_f22() {
    // F[2,2] = 1 + y1 + y3 + y1*y3 + y1*y2*y3 exactly, under 1 ms
    let result = criterion_golden_f22();
    expect_pass("criterion 1", &result);
}

#[test]
fn criterion_2_theorem_oracle_equivalence() {
    // homfly_theorem = homfly_oracle, exact reduced-fraction equality, on
    // 1,364 deterministic + 200 seeded random cases, under 60 s
    let cfg = spec_config();
    let sweep = full_sweep(&cfg);
    assert_eq!(sweep.len(), 1364 + 200);
    let result = criterion_theorem_vs_oracle(&sweep);
    expect_pass("criterion 2", &result);
    assert!(
        result.duration < Duration::from_secs(60),
        "criterion 2 took {:?} (budget 60 s)",
        result.duration
    );
}

#[test]
fn criterion_3_f_recursion_vs_brute_force() {
    // f_poly_recursive = f_poly_brute for every expansion arising from
    // coprime p/q with 2 <= p <= 100, exact, under 30 s
    let cfg = spec_config();
    let result = criterion_f_recursion_vs_brute(&cfg);
    expect_pass("criterion 3", &result);
    assert!(result.cases >= 3043, "sweep too small: {} cases", result.cases);
    assert!(
        result.duration < Duration::from_secs(30),
        "criterion 3 took {:?} (budget 30 s)",
        result.duration
    );
}

#[test]
fn criterion_4_poset_orientation_theorem() {
    // orientation sequences of CF-built posets equal the rational-built
    // reference for all coprime p/q with p <= 100, exact
    let cfg = spec_config();
    let result = criterion_poset_orientation(&cfg);
    assert_eq!(result.cases, 3043); // sum of phi(p) for p = 2..100
    expect_pass("criterion 4", &result);
}

#[test]
fn criterion_5_numerator_ideal_count() {
    // F at y = 1 equals p, and the enumerated ideal count agrees, p <= 100
    let cfg = spec_config();
    let result = criterion_numerator_count(&cfg);
    assert_eq!(result.cases, 3043);
    expect_pass("criterion 5", &result);
}

#[test]
fn criterion_6_alexander_corollary() {
    // alexander_via_corollary(cf) = alexander(eval_cf(cf)) exactly on the
    // criterion-2 sweep, plus Delta(t) = +-t^(k/2) Delta(1/t) on every case
    let cfg = spec_config();
    let sweep = full_sweep(&cfg);
    let result = criterion_alexander_corollary(&sweep);
    assert_eq!(result.cases, 1364 + 200);
    expect_pass("criterion 6", &result);
}

#[test]
fn criterion_7_named_knots() {
    // alexander(3/1), alexander(5/2) up to a unit; jones(5/2) and
    // jones(0/1) exact; each under 10 ms
    let result = criterion_named_knots();
    expect_pass("criterion 7", &result);
}

#[test]
fn criterion_8_segment_invariants_and_mu_nu_table() {
    // specialized segment sums/products match the closed forms on every
    // segment of every sweep case, and the mu/nu recursion equals brute
    // specialization on the deterministic sweep, exact
    let cfg = spec_config();
    let sweep = full_sweep(&cfg);
    let segments = criterion_segment_invariants(&sweep);
    assert_eq!(segments.cases, 1364 + 200);
    expect_pass("criterion 8 (segments)", &segments);

    let deterministic = deterministic_sweep(cfg.sweep_depth);
    assert_eq!(deterministic.len(), 1364);
    let ftilde = criterion_ftilde_vs_brute(&deterministic, cfg.ideal_cap);
    expect_pass("criterion 8 (mu/nu recursion)", &ftilde);
}

#[test]
fn criterion_9_skein_extension_identity() {
    // the +2 sgn(b_n) extension identity holds for the oracle on the sweep
    let cfg = spec_config();
    let sweep = full_sweep(&cfg);
    let result = criterion_skein_extension(&sweep);
    assert_eq!(result.cases, 1364 + 200);
    expect_pass("criterion 9", &result);
}
