use num_bigint::BigInt;

use super::*;
use crate::arith::{int, rat, CycNum, Rat};
use crate::catalog::{self, angle, constant, logs};
use crate::linalg::ZLattice;
use crate::model::{CycPolyMV, Generator};
use crate::subspace::{compute_h, split_space};
use crate::Error;

fn cyc(r: Rat) -> CycNum {
    CycNum::from_rat(r, 1).unwrap()
}

fn spec(bound: i64, den: u64) -> SearchSpec {
    SearchSpec::new(int(bound), den).unwrap()
}

fn qs(records: &[SolutionRecord]) -> Vec<Vec<Rat>> {
    records.iter().map(|r| r.q.clone()).collect()
}

#[test]
fn evaluate_four_pow_minus_two() {
    let sys = catalog::four_pow_minus_two();
    let e = evaluate_at(&sys, &[rat(1, 2)], EvalMode::ExactOnly).unwrap();
    assert!(e.is_zero);
    assert_eq!(e.zero_mode, ZeroMode::ExactCyclotomic);
    let values: Vec<_> = e.grouping.terms.iter().map(|t| t.value.clone().unwrap()).collect();
    assert_eq!(values, vec![cyc(int(2)), cyc(int(-2))]);

    let e = evaluate_at(&sys, &[int(1)], EvalMode::ExactOnly).unwrap();
    assert!(!e.is_zero);
    let values: Vec<_> = e.grouping.terms.iter().map(|t| t.value.clone().unwrap()).collect();
    assert_eq!(values, vec![cyc(int(4)), cyc(int(-2))]);
}

#[test]
fn identical_rows_cancel_in_one_group() {
    let sys = catalog::identical_rows();
    for q in [rat(1, 3), int(-2), rat(7, 5)] {
        let e = evaluate_at(&sys, &[q], EvalMode::AllowGrouped).unwrap();
        assert!(e.is_zero);
        assert_eq!(e.grouping.groups.len(), 1);
        assert!(e.grouping.groups[0].coefficient.is_zero());
        assert_eq!(e.zero_mode, ZeroMode::ExactCyclotomic);
    }
}

#[test]
fn grouped_mode_is_flagged() {
    let sys = catalog::paired_cancellation();
    let e = evaluate_at(&sys, &[rat(1, 2)], EvalMode::AllowGrouped).unwrap();
    assert!(e.is_zero);
    assert_eq!(e.zero_mode, ZeroMode::GroupedRadical);
    assert_eq!(e.grouping.groups.len(), 2);

    // √2 − 1 stays nonzero
    let sys = catalog::assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![(constant(1, 1), vec![logs(&[1])]), (constant(-1, 1), vec![logs(&[0])])],
    )
    .unwrap();
    let e = evaluate_at(&sys, &[rat(1, 2)], EvalMode::AllowGrouped).unwrap();
    assert!(!e.is_zero);
    assert_eq!(e.zero_mode, ZeroMode::GroupedRadical);
    assert_eq!(e.grouping.terms[0].value, None);
}

#[test]
fn perfect_power_generators_fold_exactly() {
    // 4^x − 2 written over the generator 4
    let sys = catalog::assemble(
        vec![Generator::concrete("g1", int(4))],
        1,
        vec![(constant(1, 1), vec![logs(&[1])]), (constant(-2, 1), vec![logs(&[0])])],
    )
    .unwrap();
    let e = evaluate_at(&sys, &[rat(1, 2)], EvalMode::ExactOnly).unwrap();
    assert!(e.is_zero);
    assert_eq!(e.zero_mode, ZeroMode::ExactCyclotomic);
}

#[test]
fn symbolic_fractional_exponent_needs_grouped_mode() {
    let sys = catalog::assemble(
        vec![Generator::symbol("u")],
        1,
        vec![(constant(1, 1), vec![logs(&[1])]), (constant(-1, 1), vec![logs(&[0])])],
    )
    .unwrap();
    assert_eq!(
        evaluate_at(&sys, &[rat(1, 2)], EvalMode::ExactOnly),
        Err(Error::RequiresGroupedMode)
    );
    let e = evaluate_at(&sys, &[rat(1, 2)], EvalMode::AllowGrouped).unwrap();
    assert!(!e.is_zero);
    // integer exponents of a symbol are exact monomials
    let e = evaluate_at(&sys, &[int(0)], EvalMode::ExactOnly).unwrap();
    assert!(e.is_zero);
    let e = evaluate_at(&sys, &[int(2)], EvalMode::ExactOnly).unwrap();
    assert!(!e.is_zero);
    assert_eq!(e.zero_mode, ZeroMode::ExactCyclotomic);
}

#[test]
fn torsion_angles() {
    let sys = catalog::minus_one_pow_plus_one();
    assert!(evaluate_at(&sys, &[int(3)], EvalMode::ExactOnly).unwrap().is_zero);
    assert!(!evaluate_at(&sys, &[int(2)], EvalMode::ExactOnly).unwrap().is_zero);
    assert!(!evaluate_at(&sys, &[rat(1, 3)], EvalMode::ExactOnly).unwrap().is_zero);
}

#[test]
fn classify_examples() {
    let sys = catalog::four_pow_minus_two();
    let split = split_space(&sys);
    let r = classify(&sys, &split, &[rat(1, 2)], EvalMode::ExactOnly, 20).unwrap().unwrap();
    assert_eq!(r.status, Status::Nondegenerate);
    assert_eq!(r.pi_prime, vec![rat(1, 2)]);
    assert_eq!(classify(&sys, &split, &[int(1)], EvalMode::ExactOnly, 20).unwrap(), None);

    let sys = catalog::paired_cancellation();
    let split = split_space(&sys);
    let r = classify(&sys, &split, &[rat(-3, 7)], EvalMode::AllowGrouped, 20).unwrap().unwrap();
    assert_eq!(
        r.status,
        Status::Degenerate {
            witness: vec![vec![0, 1], vec![2, 3]]
        }
    );
    assert!(matches!(
        classify(&sys, &split, &[int(1)], EvalMode::AllowGrouped, 3),
        Err(Error::SubsetExplosion { terms: 4, cap: 3 })
    ));

    let sys = catalog::single_term();
    let split = split_space(&sys);
    let r = classify(&sys, &split, &[int(2), int(2)], EvalMode::ExactOnly, 20).unwrap().unwrap();
    assert_eq!(r.status, Status::Nondegenerate);
}

#[test]
fn zero_coefficient_term_is_its_own_block() {
    // x·2^x − 2·x: at x = 0 both terms vanish separately.
    let x = CycPolyMV::monomial(vec![1], 1).unwrap();
    let sys = catalog::assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![(x.clone(), vec![logs(&[1])]), (x.scale(&cyc(int(-2))), vec![logs(&[0])])],
    )
    .unwrap();
    let split = split_space(&sys);
    let r = classify(&sys, &split, &[int(0)], EvalMode::ExactOnly, 20).unwrap().unwrap();
    assert_eq!(
        r.status,
        Status::Degenerate {
            witness: vec![vec![0], vec![1]]
        }
    );
    let r = classify(&sys, &split, &[int(1)], EvalMode::ExactOnly, 20).unwrap().unwrap();
    assert_eq!(r.status, Status::Nondegenerate);
}

#[test]
fn search_examples() {
    let sys = catalog::four_pow_minus_two();
    let records = search_box(&sys, &spec(3, 12)).unwrap();
    assert_eq!(qs(&records), vec![vec![rat(1, 2)]]);
    assert_eq!(grid_cardinality(&spec(3, 12), 1), BigInt::from(73));
    assert!(search_box(&sys, &spec(3, 1)).unwrap().is_empty());

    let sys = catalog::minus_one_pow_plus_one();
    let records = search_box(&sys, &spec(3, 6)).unwrap();
    assert_eq!(qs(&records), vec![vec![int(-3)], vec![int(-1)], vec![int(1)], vec![int(3)]]);
}

#[test]
fn search_is_lexicographic_in_two_variables() {
    let sys = catalog::symmetric_logs();
    let records = search_box(&sys, &spec(1, 2)).unwrap();
    let diag: Vec<Vec<Rat>> = [-2, -1, 0, 1, 2].iter().map(|&k| vec![rat(k, 2), rat(k, 2)]).collect();
    assert_eq!(qs(&records), diag);
}

#[test]
fn search_cap() {
    let sys = catalog::two_three_six();
    let mut sp = spec(10, 10);
    sp.max_points = 1000;
    assert_eq!(
        search_box(&sys, &sp),
        Err(Error::SearchTooLarge {
            cardinality: "40401".into(),
            cap: 1000
        })
    );
}

#[test]
fn empirical_denominator_examples() {
    let sys = catalog::four_pow_minus_two();
    let split = split_space(&sys);
    let sp = spec(3, 12);
    let records = search_box(&sys, &sp).unwrap();
    let cert = empirical_denominator(&records, &split, &sp);
    assert_eq!(cert.n_emp, BigInt::from(2));
    assert_eq!(cert.fingerprint, split.fingerprint());
    assert_eq!(empirical_denominator(&[], &split, &sp).n_emp, BigInt::from(1));

    let sys = catalog::minus_one_pow_plus_one();
    let split = split_space(&sys);
    let records = search_box(&sys, &spec(3, 1)).unwrap();
    assert_eq!(empirical_denominator(&records, &split, &sp).n_emp, BigInt::from(1));
}

#[test]
fn distance_examples() {
    let sys = catalog::minus_one_pow_plus_one();
    let h = compute_h(&sys);
    assert_eq!(h, ZLattice::multiples(2));
    let split = split_space(&sys);
    let r = classify(&sys, &split, &[int(1)], EvalMode::ExactOnly, 20).unwrap().unwrap();
    let rows = distance_report(&[r.clone()], &h, &BigInt::from(1)).unwrap();
    assert_eq!(rows[0].nearest, vec![int(0)]);
    assert_eq!(rows[0].distance, int(1));
    assert_eq!(rows[0].log_size, "0.000000");

    let r4 = classify(&sys, &split, &[int(5)], EvalMode::ExactOnly, 20).unwrap().unwrap();
    let rows = distance_report(&[r4], &ZLattice::multiples(5), &BigInt::from(1)).unwrap();
    assert_eq!(rows[0].distance, int(0));
    assert_eq!(rows[0].log_size, "1.609438");

    assert!(distance_report(&[], &h, &BigInt::from(1)).unwrap().is_empty());
}

#[test]
fn translate_examples() {
    let sys = catalog::minus_one_pow_plus_one();
    let h = compute_h(&sys);
    let records = search_box(&sys, &spec(5, 1)).unwrap();
    let v = translate_check(&sys, &records, &h, &BigInt::from(5)).unwrap();
    assert!(v.passed);
    assert_eq!(v.cosets.len(), 1);
    assert_eq!(v.cosets[0].representative, vec![BigInt::from(1)]);
    assert_eq!((v.cosets[0].found, v.cosets[0].expected), (6, 6));

    let partial: Vec<_> = records.iter().filter(|r| r.q != vec![int(3)]).cloned().collect();
    let v = translate_check(&sys, &partial, &h, &BigInt::from(5)).unwrap();
    assert!(!v.passed);
    assert_eq!(v.missing, vec![vec![BigInt::from(3)]]);

    let v = translate_check(&sys, &[], &h, &BigInt::from(5)).unwrap();
    assert!(v.passed && v.cosets.is_empty());

    let sys = catalog::linear_times_two_pow();
    assert!(matches!(
        translate_check(&sys, &[], &compute_h(&sys), &BigInt::from(5)),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn finiteness_examples() {
    let sys = catalog::two_three_six();
    let mut sp = spec(2, 6);
    sp.growth_steps = 1;
    let rep = finiteness_monitor(&sys, &sp).unwrap();
    let counts: Vec<usize> = rep.rows.iter().map(|r| r.nondegenerate).collect();
    assert_eq!(counts, vec![1, 1]);
    assert!(rep.stabilized);
    assert_eq!(rep.warnings, vec![FINITENESS_NOTE.to_string()]);

    let sys = catalog::identical_rows();
    let mut sp = spec(1, 2);
    sp.growth_steps = 2;
    let rep = finiteness_monitor(&sys, &sp).unwrap();
    let counts: Vec<usize> = rep.rows.iter().map(|r| r.nondegenerate).collect();
    assert_eq!(counts, vec![5, 9, 17]);
    assert!(!rep.stabilized);
    assert!(rep.warnings[0].starts_with("hypothesis fails"));

    let sys = catalog::four_pow_minus_two();
    let mut sp = spec(1, 1);
    sp.growth_steps = 2;
    let rep = finiteness_monitor(&sys, &sp).unwrap();
    assert!(rep.rows.iter().all(|r| r.nondegenerate == 0));
}

#[test]
fn angles_combine_with_logs() {
    // 2^x = 2·exp(πi·x) needs x even and x = 1 at once: no solutions.
    let sys = catalog::assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![
            (constant(-1, 1), vec![logs(&[1])]),
            (constant(2, 1), vec![angle(rat(1, 2), 1)]),
        ],
    )
    .unwrap();
    let records = search_box(&sys, &spec(4, 4)).unwrap();
    assert!(records.is_empty());
    let e = evaluate_at(&sys, &[int(1)], EvalMode::ExactOnly).unwrap();
    assert!(!e.is_zero);
}
