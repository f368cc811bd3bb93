use super::*;
use crate::chevalley::DEFAULT_SEED;
use crate::distsets::{build_stage, build_stages};
use crate::involution::{build_involution, preset};
use crate::rootsystem::RootSystem;

fn form(label: &str, rank: usize, name: &str) -> RealForm {
    let t = StructureTable::build(RootSystem::from_label(label, Some(rank)).unwrap());
    let spec = preset(&t, name).unwrap();
    build_involution(&t, &spec).unwrap()
}

fn verify(rf: &RealForm, stage: Stage) -> VerificationReport {
    let s = build_stage(rf, stage).unwrap();
    check_distinguished(&rf.table, &s, rf.table.dim())
}

#[test]
fn compact_a1_witnesses() {
    let rf = form("A", 1, "compact");
    let r = verify(&rf, Stage::S0);
    assert!(r.verdict);
    assert_eq!(r.size, 3);
    assert_eq!(r.counts.failed, 0);
    assert!(r.generation_table.iter().all(|g| g.witness.is_some()));
    assert!(check_realness(&r));
}

#[test]
fn compact_a2_is_distinguished() {
    let r = verify(&form("A", 2, "compact"), Stage::S0);
    assert!(r.verdict, "{:?}", r.first_failure());
    assert_eq!(r.spanning_rank, 8);
}

#[test]
fn compact_b3_s0_fails_on_y_elements() {
    let r = verify(&form("B", 3, "compact"), Stage::S0);
    assert!(!r.verdict);
    let f = r.first_failure().expect("a closure failure");
    assert!(r.closure_failures.iter().any(|f| f.left.starts_with('Y') && f.right.starts_with('Y')));
    assert!(!f.bracket.is_zero());
}

#[test]
fn fixtures() {
    let t = StructureTable::build(RootSystem::from_label("A", Some(2)).unwrap());
    let split = split_chevalley_set(&t);
    let r = check_distinguished(&t, &split, t.dim());
    assert!(r.verdict, "{:?}", r.first_failure());

    let both = complex_algebra_set(&t);
    assert_eq!(both.len(), 2 * split.len());
    let r = check_distinguished(&t, &both, 2 * t.dim());
    assert!(r.verdict && r.all_real, "{:?}", r.first_failure());

    let rf = form("A", 2, "compact");
    let r = check_distinguished(&rf.table, &non_real_fixture(&rf), rf.table.dim());
    assert!(!r.verdict);
    assert!(!r.all_real || r.counts.failed > 0);
}

#[test]
fn stage_equivalences() {
    let d4 = build_stages(&form("D", 4, "compact"), 1);
    assert!(check_equivalence(&d4[0], &d4[1]));

    let f4 = build_stages(&form("F", 4, "compact"), 3);
    assert!(!check_equivalence(&f4[1], &f4[2]));
    assert!(check_equivalence(&f4[2], &f4[3]));
}

#[test]
fn report_serializes_without_timing() {
    let r = verify(&form("A", 1, "compact"), Stage::S0).summarized();
    let j = serde_json::to_value(&r).unwrap();
    assert!(j.get("elapsed").is_none());
    assert!(j.get("closure_table").is_none());
    assert_eq!(j["verdict"], true);
}

#[test]
fn unknown_suite_is_an_error() {
    let rf = form("A", 1, "compact");
    let ctx = SuiteContext::new(&rf, DEFAULT_SEED);
    assert!(run_property_suite("no-such-suite", &ctx).is_err());
}

fn assert_suites(label: &str, rank: usize, name: &str, must_run: &[&str]) {
    let rf = form(label, rank, name);
    let ctx = SuiteContext::new(&rf, DEFAULT_SEED);
    for r in run_all_suites(&ctx) {
        assert!(r.passed(), "{label}{rank} {name}: {} {:?}", r.summary_line(), &r.failures[..r.failures.len().min(4)]);
        if must_run.contains(&r.suite.as_str()) {
            assert!(r.skipped.is_none() && r.cases > 0, "{label}{rank} {name}: {} did not run", r.suite);
        }
    }
}

#[test]
fn suites_compact_b3() {
    assert_suites("B", 3, "compact", &["psi-phi-brackets", "single-root-isometries", "iop-classification"]);
}

#[test]
fn suites_compact_c3() {
    assert_suites("C", 3, "compact", &["psi-psi-brackets-zero-sum", "single-root-isometries"]);
}

#[test]
fn suites_quasi_split_a5() {
    assert_suites("A", 5, "quasi-split", &["matched-pair-phi-brackets", "complex-root-strong-orthogonality"]);
}

#[test]
fn suites_quasi_split_d5() {
    assert_suites("D", 5, "quasi-split", &["matched-pairs-and-single-roots", "single-root-isometries"]);
}

#[test]
fn suites_compact_g2() {
    assert_suites("G", 2, "compact", &["g2-special-set-brackets", "g2-structure-constant-relation"]);
}

#[test]
fn suites_compact_f4() {
    assert_suites("F", 4, "compact", &["sigma-psi-brackets", "sin-block-structure-constants", "psi-psi-brackets-root-sum"]);
}

#[test]
fn suites_quasi_split_e6() {
    assert_suites("E", 6, "quasi-split", &["sigma-sigma-brackets", "single-root-isometries"]);
}

#[test]
fn short_roots_of_c3_on_different_coordinates_are_not_matched() {
    let rf = form("C", 3, "compact");
    let rs = rf.root_system();
    let a = rs.lookup_scaled(&[1, 1, 0]).unwrap();
    let b = rs.lookup_scaled(&[1, 0, 1]).unwrap();
    assert!(!rs.is_long(a) && !rs.is_long(b));
    assert!(rs.add(a, b).is_none());
    assert!(!matched_pair_predicate(&rf).unwrap()(a, b));
    let c = rs.lookup_scaled(&[1, -1, 0]).unwrap();
    assert!(matched_pair_predicate(&rf).unwrap()(a, c));
}

#[test]
fn a5_matched_pairs_are_closed_under_minus_theta() {
    let rf = form("A", 5, "quasi-split");
    let rs = rf.root_system();
    let pred = matched_pair_predicate(&rf).unwrap();
    for a in rs.roots() {
        for b in rs.roots() {
            let nb = rs.neg(rf.inv.theta_root(b));
            assert_eq!(pred(a, b), pred(a, nb));
        }
    }
}
