//! Acceptance suite: every validation criterion at its stated scale and
//! tolerance, one test per criterion. Each prints a PASS/FAIL line
//! (visible with `cargo test -- --nocapture` and in failure output).

use vacantlab::harness::validate::{self as v, CriterionResult, Profile};

fn check(res: CriterionResult) {
    println!("{}", res.line());
    assert!(res.passed, "{}", res.line());
}

#[test]
fn criterion_01_vacant_set_size_simple_walk() {
    check(v::c01_vacant_set_size_simple(&Profile::full()));
}

#[test]
fn criterion_02_vacant_net_size_simple_walk() {
    check(v::c02_vacant_net_size_simple(&Profile::full()));
}

#[test]
fn criterion_03_non_backtracking_sizes() {
    check(v::c03_nbw_sizes(&Profile::full()));
}

#[test]
fn criterion_04_six_threshold_closed_forms() {
    check(v::c04_threshold_closed_forms(&Profile::full()));
}

#[test]
fn criterion_05_threshold_ratios_at_r3() {
    check(v::c05_threshold_ratios(&Profile::full()));
}

#[test]
fn criterion_06_phase_bracketing() {
    check(v::c06_phase_bracketing(&Profile::full()));
}

#[test]
fn criterion_07_empirical_threshold_location() {
    check(v::c07_q_crossing(&Profile::full()));
}

#[test]
fn criterion_08_molloy_reed_sign_flip() {
    check(v::c08_molloy_reed_sign_flip(&Profile::full()));
}

#[test]
fn criterion_09_edge_process_degree_law() {
    check(v::c09_edge_process_degree_law(&Profile::full()));
}

#[test]
fn criterion_10_edge_process_cover_time() {
    check(v::c10_edge_process_cover_time(&Profile::full()));
}

#[test]
fn criterion_11_edge_process_thresholds() {
    check(v::c11_edge_process_thresholds(&Profile::full()));
}

#[test]
fn criterion_12_simple_and_nbw_cover_times() {
    check(v::c12_walk_cover_times(&Profile::full()));
}

/// Slow suite (several minutes of walk time at the largest sizes).
#[test]
fn criterion_13_scaling_window_exponent() {
    check(v::c13_scaling_window_exponent(&Profile::full()));
}

#[test]
fn criterion_14_oracle_and_uniformity_properties() {
    check(v::c14_oracles(&Profile::full()));
}
