//! Small reference systems used throughout the tests and documentation.

use crate::arith::{int, rat, CycNum, Rat};
use crate::model::{validate_system, CycPolyMV, EqSystem, Generator, LogCoord, RawSystem};
use crate::Result;

/// Builds a validated system from `(P_i, α_i)` pairs.
pub fn assemble(
    generators: Vec<Generator>,
    order: usize,
    terms: Vec<(CycPolyMV, Vec<LogCoord>)>,
) -> Result<EqSystem> {
    let (polys, alpha) = terms.into_iter().unzip();
    Ok(validate_system(RawSystem {
        generators,
        alpha,
        polys,
        order,
    })?)
}

/// `α = Σ_m logs[m]·log g_m` with no torsion part.
pub fn logs(coords: &[i64]) -> LogCoord {
    LogCoord::new(Rat::from_integer(0.into()), coords.iter().map(|&c| int(c)).collect())
}

/// `α = 2πi·rho` over `m` generators.
pub fn angle(rho: Rat, m: usize) -> LogCoord {
    let mut c = LogCoord::zero(m);
    c.rho = rho;
    c
}

pub fn constant(c: i64, nvars: usize) -> CycPolyMV {
    CycPolyMV::from_rat(int(c), 1, nvars).expect("order 1 is always available")
}

/// `4^x − 2`, written over the generator 2 as `exp(x·2 log 2) − 2`.
pub fn four_pow_minus_two() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![(constant(1, 1), vec![logs(&[2])]), (constant(-2, 1), vec![logs(&[0])])],
    )
    .unwrap()
}

/// `exp(πi·x) + 1`.
pub fn minus_one_pow_plus_one() -> EqSystem {
    assemble(
        vec![],
        1,
        vec![
            (constant(1, 1), vec![angle(rat(1, 2), 0)]),
            (constant(1, 1), vec![angle(int(0), 0)]),
        ],
    )
    .unwrap()
}

/// `2^x·3^y − 6`.
pub fn two_three_six() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2)), Generator::concrete("g2", int(3))],
        1,
        vec![
            (constant(1, 2), vec![logs(&[1, 0]), logs(&[0, 1])]),
            (constant(-6, 2), vec![logs(&[0, 0]), logs(&[0, 0])]),
        ],
    )
    .unwrap()
}

/// `2^x·3^y − 3^x·2^y`; every point of the diagonal is a solution.
pub fn symmetric_logs() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2)), Generator::concrete("g2", int(3))],
        1,
        vec![
            (constant(1, 2), vec![logs(&[1, 0]), logs(&[0, 1])]),
            (constant(-1, 2), vec![logs(&[0, 1]), logs(&[1, 0])]),
        ],
    )
    .unwrap()
}

/// `2^x − 4^x`.
pub fn two_vs_four() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![(constant(1, 1), vec![logs(&[1])]), (constant(-1, 1), vec![logs(&[2])])],
    )
    .unwrap()
}

/// `2^x − 2^x`.
pub fn identical_rows() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![(constant(1, 1), vec![logs(&[1])]), (constant(-1, 1), vec![logs(&[1])])],
    )
    .unwrap()
}

/// `2^x − 2^x + 1 − 1`: any point solves it, always degenerately.
pub fn paired_cancellation() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![
            (constant(1, 1), vec![logs(&[1])]),
            (constant(-1, 1), vec![logs(&[1])]),
            (constant(1, 1), vec![logs(&[0])]),
            (constant(-1, 1), vec![logs(&[0])]),
        ],
    )
    .unwrap()
}

/// One term `(X_1 − X_2)·2^{X_1}`.
pub fn single_term() -> EqSystem {
    let x1 = CycPolyMV::monomial(vec![1, 0], 1).unwrap();
    let minus_x2 = CycPolyMV::monomial(vec![0, 1], 1)
        .unwrap()
        .scale(&CycNum::from_rat(int(-1), 1).unwrap());
    assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![(x1.add(&minus_x2), vec![logs(&[1]), logs(&[0])])],
    )
    .unwrap()
}

/// `x·2^x − 2`: a non-constant coefficient polynomial.
pub fn linear_times_two_pow() -> EqSystem {
    assemble(
        vec![Generator::concrete("g1", int(2))],
        1,
        vec![
            (CycPolyMV::monomial(vec![1], 1).unwrap(), vec![logs(&[1])]),
            (constant(-2, 1), vec![logs(&[0])]),
        ],
    )
    .unwrap()
}
