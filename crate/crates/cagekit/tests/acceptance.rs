//! The acceptance suite: one test per criterion, run at full strength
//! (q up to 16, exact tolerances). Each test prints its criterion line;
//! run with `--nocapture` to see the lines for passing criteria too.
//!
//! Known red: the q = 16 parts of criteria 6 and 7. The two seed halves
//! are not disjoint there (1 + u + u^2 has roots in F_16), so the set
//! measures 638 rather than 2(q^2+4q+3) = 646 and the residual graph has
//! 8100 rather than 8092 vertices; the q16_* unit tests in the dominating
//! module pin down the measured behaviour.

use cagekit::selftest::{
    criterion_bq_hq, criterion_distance_claims, criterion_dual_equivalence, criterion_io_roundtrip,
    criterion_moore_cages, criterion_pds, criterion_removal, criterion_stages,
    criterion_verifier_soundness, CriterionResult, SelftestConfig,
};

fn cfg() -> SelftestConfig {
    SelftestConfig {
        q_max: 16,
        quick: false,
        threads: std::thread::available_parallelism()
            .map(|n| n.get().min(8))
            .unwrap_or(1),
    }
}

fn assert_criterion(result: CriterionResult) {
    println!("{}", result.summary_line());
    assert!(result.pass, "\n{}", result.summary_line());
}

#[test]
fn criterion_1_moore_cage_reproduction() {
    assert_criterion(criterion_moore_cages(&cfg()));
}

#[test]
fn criterion_2_dual_formulation_equivalence() {
    assert_criterion(criterion_dual_equivalence(&cfg()));
}

#[test]
fn criterion_3_bq_hq_and_isomorphism() {
    assert_criterion(criterion_bq_hq(&cfg()));
}

#[test]
fn criterion_4_stage_ledger() {
    assert_criterion(criterion_stages(&cfg()));
}

#[test]
fn criterion_5_distance_claims() {
    assert_criterion(criterion_distance_claims(&cfg()));
}

#[test]
fn criterion_6_perfect_dominating_set() {
    assert_criterion(criterion_pds(&cfg()));
}

#[test]
fn criterion_7_removal_reproduction() {
    assert_criterion(criterion_removal(&cfg()));
}

#[test]
fn criterion_8_verifier_soundness() {
    assert_criterion(criterion_verifier_soundness(&cfg()));
}

#[test]
fn criterion_9_io_roundtrip() {
    assert_criterion(criterion_io_roundtrip(&cfg()));
}
