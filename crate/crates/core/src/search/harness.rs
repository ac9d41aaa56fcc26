use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use super::classify::{classify, SolutionRecord, DEFAULT_SUBSET_CAP};
use super::evaluate::EvalMode;
use crate::arith::{sup_norm, Rat};
use crate::linalg::ZLattice;
use crate::model::{exp_value, group_relation, EqSystem};
use crate::subspace::{split_space, SplitSpace};
use crate::{Error, Result};

pub const DEFAULT_MAX_POINTS: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    /// Sup-norm bound `B`.
    pub bound: Rat,
    /// Grid `(1/D)ℤᵗ`.
    pub denominator: u64,
    pub mode: EvalMode,
    pub growth_steps: u32,
    pub max_points: u64,
    pub subset_cap: usize,
}

impl SearchSpec {
    pub fn new(bound: Rat, denominator: u64) -> Result<Self> {
        if !bound.is_positive() {
            return Err(Error::InvalidParameter("box bound must be positive".into()));
        }
        if denominator == 0 {
            return Err(Error::InvalidParameter("denominator must be at least 1".into()));
        }
        Ok(SearchSpec {
            bound,
            denominator,
            mode: EvalMode::AllowGrouped,
            growth_steps: 0,
            max_points: DEFAULT_MAX_POINTS,
            subset_cap: DEFAULT_SUBSET_CAP,
        })
    }

    pub fn with_bound(&self, bound: Rat) -> Self {
        SearchSpec {
            bound,
            ..self.clone()
        }
    }

    /// Largest numerator `K` with `K/D ≤ B`.
    fn reach(&self) -> BigInt {
        (&self.bound * Rat::from_integer(self.denominator.into())).floor().to_integer()
    }
}

/// Number of grid points, `(2K + 1)^t`.
pub fn grid_cardinality(spec: &SearchSpec, t: usize) -> BigInt {
    let side: BigInt = spec.reach() * 2 + 1;
    num_traits::pow(side, t)
}

/// Every solution `q ∈ (1/D)ℤᵗ` with `|q| ≤ B`, classified, in
/// lexicographic order of `q`. Slices with a fixed first coordinate are
/// searched in parallel and concatenated in order.
pub fn search_box(sys: &EqSystem, spec: &SearchSpec) -> Result<Vec<SolutionRecord>> {
    let t = sys.t();
    let card = grid_cardinality(spec, t);
    if card > BigInt::from(spec.max_points) {
        return Err(Error::SearchTooLarge {
            cardinality: card.to_string(),
            cap: spec.max_points,
        });
    }
    let split = split_space(sys);
    let k = spec.reach().to_i64().expect("bounded by the point cap");
    let d = Rat::from_integer(spec.denominator.into());
    let coord = |n: i64| Rat::from_integer(n.into()) / &d;
    if t == 0 {
        return Ok(classify(sys, &split, &[], spec.mode, spec.subset_cap)?.into_iter().collect());
    }
    let slices: Vec<Vec<SolutionRecord>> = (-k..=k)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut idx = vec![-k; t];
            idx[0] = first;
            loop {
                let q: Vec<Rat> = idx.iter().map(|&n| coord(n)).collect();
                if let Some(r) = classify(sys, &split, &q, spec.mode, spec.subset_cap)? {
                    out.push(r);
                }
                // odometer over coordinates 1..t
                let mut i = t;
                loop {
                    i -= 1;
                    if i == 0 {
                        return Ok(out);
                    }
                    if idx[i] < k {
                        idx[i] += 1;
                        idx[i + 1..].iter_mut().for_each(|x| *x = -k);
                        break;
                    }
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(slices.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalCert {
    /// lcm of the denominators of `π′(q)` over nondegenerate records.
    pub n_emp: BigInt,
    pub records: Vec<SolutionRecord>,
    pub bound: Rat,
    pub denominator: u64,
    pub fingerprint: String,
}

pub fn empirical_denominator(
    records: &[SolutionRecord],
    split: &SplitSpace,
    spec: &SearchSpec,
) -> EmpiricalCert {
    let n_emp = records
        .iter()
        .filter(|r| r.status.is_nondegenerate())
        .flat_map(|r| r.pi_prime.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    EmpiricalCert {
        n_emp,
        records: records.to_vec(),
        bound: spec.bound.clone(),
        denominator: spec.denominator,
        fingerprint: split.fingerprint(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub q: Vec<Rat>,
    pub pi_prime: Vec<Rat>,
    /// Nearest point of `L/N` to `π′(q)`.
    pub nearest: Vec<Rat>,
    /// Sup-norm distance from `π′(q)` to `nearest`.
    pub distance: Rat,
    /// `log(max(1, |π′(q)|))`, rounded to six decimals.
    pub log_size: String,
}

/// For each nondegenerate record, the point of `L/N` nearest to `π′(q)`.
pub fn distance_report(records: &[SolutionRecord], lattice: &ZLattice, n: &BigInt) -> Result<Vec<DistanceRow>> {
    if !n.is_positive() {
        return Err(Error::InvalidParameter("scale N must be positive".into()));
    }
    let scale = Rat::from_integer(n.clone());
    records
        .iter()
        .filter(|r| r.status.is_nondegenerate())
        .map(|r| {
            let target: Vec<Rat> = r.pi_prime.iter().map(|x| x * &scale).collect();
            let (m, dist) = lattice.nearest_point(&target);
            Ok(DistanceRow {
                q: r.q.clone(),
                pi_prime: r.pi_prime.clone(),
                nearest: m.into_iter().map(|x| Rat::from_integer(x) / &scale).collect(),
                distance: dist / &scale,
                log_size: log_size(&sup_norm(&r.pi_prime)),
            })
        })
        .collect()
}

fn log_size(x: &Rat) -> String {
    if *x <= Rat::one() {
        return "0.000000".into();
    }
    // ln(p/q) from the bit lengths keeps huge values in range.
    let ln = |n: &BigInt| {
        let bits = n.bits();
        let shift = bits.saturating_sub(52);
        let head = (n >> shift).to_f64().expect("fits in 53 bits");
        head.ln() + shift as f64 * std::f64::consts::LN_2
    };
    format!("{:.6}", ln(x.numer()) - ln(x.denom()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetReport {
    /// Canonical representative, reduced against the HNF basis of `H`.
    pub representative: Vec<BigInt>,
    pub found: usize,
    /// Points of the coset in the box.
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateVerdict {
    pub passed: bool,
    pub cosets: Vec<CosetReport>,
    /// Coset points in the box missing from the records.
    pub missing: Vec<Vec<BigInt>>,
}

/// Checks that the integer nondegenerate solutions fill whole cosets of `H`
/// inside the integer box `|n| ≤ bound`.
pub fn translate_check(
    sys: &EqSystem,
    records: &[SolutionRecord],
    h: &ZLattice,
    bound: &BigInt,
) -> Result<TranslateVerdict> {
    if !sys.all_constant() {
        return Err(Error::HypothesisViolated(
            "translate check needs constant coefficient polynomials".into(),
        ));
    }
    let found: BTreeSet<Vec<BigInt>> = records
        .iter()
        .filter(|r| r.status.is_nondegenerate() && r.q.iter().all(Rat::is_integer))
        .map(|r| r.q.iter().map(Rat::to_integer).collect())
        .collect();
    let reps: BTreeSet<Vec<BigInt>> = found.iter().map(|n| h.reduce(n)).collect();
    let t = sys.t();
    let mut cosets = Vec::new();
    let mut missing = Vec::new();
    for rep in reps {
        let mut report = CosetReport {
            representative: rep.clone(),
            found: 0,
            expected: 0,
        };
        for n in integer_box(t, bound) {
            let diff: Vec<BigInt> = n.iter().zip(&rep).map(|(a, b)| a - b).collect();
            if !h.contains(&diff) {
                continue;
            }
            report.expected += 1;
            if found.contains(&n) {
                report.found += 1;
            } else {
                missing.push(n);
            }
        }
        cosets.push(report);
    }
    Ok(TranslateVerdict {
        passed: missing.is_empty(),
        cosets,
        missing,
    })
}

fn integer_box(t: usize, bound: &BigInt) -> impl Iterator<Item = Vec<BigInt>> {
    let b = bound.clone();
    let mut cur: Option<Vec<BigInt>> = Some(vec![-b.clone(); t]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if next[i] < b {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = -b.clone());
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessRow {
    pub bound: Rat,
    pub nondegenerate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    pub rows: Vec<FinitenessRow>,
    /// The count did not change over the last two boxes.
    pub stabilized: bool,
    pub warnings: Vec<String>,
}

pub const FINITENESS_NOTE: &str = "a stable count is evidence of finiteness, not proof";

/// Nondegenerate solution counts on boxes `B, 2B, …, 2^k B`.
pub fn finiteness_monitor(sys: &EqSystem, spec: &SearchSpec) -> Result<FinitenessReport> {
    let mut warnings = Vec::new();
    if !sys.genset().all_concrete() {
        warnings.push("symbolic generators present; the finiteness hypothesis cannot be checked".into());
    }
    let betas: Vec<_> = sys.alpha_prime().rows()[1..]
        .iter()
        .flatten()
        .map(|c| exp_value(std::slice::from_ref(c), &[Rat::one()]))
        .collect();
    if let Some(rel) = group_relation(&betas) {
        let rel: Vec<String> = rel.iter().map(|e| e.to_string()).collect();
        warnings.push(format!(
            "hypothesis fails: the normalized exponential bases are multiplicatively dependent (relation [{}])",
            rel.join(", ")
        ));
    }
    let mut rows = Vec::new();
    let mut bound = spec.bound.clone();
    for _ in 0..=spec.growth_steps {
        let records = search_box(sys, &spec.with_bound(bound.clone()))?;
        rows.push(FinitenessRow {
            bound: bound.clone(),
            nondegenerate: records.iter().filter(|r| r.status.is_nondegenerate()).count(),
        });
        bound *= Rat::from_integer(2.into());
    }
    let stabilized = rows.len() >= 2 && rows[rows.len() - 1].nondegenerate == rows[rows.len() - 2].nondegenerate;
    warnings.push(FINITENESS_NOTE.into());
    Ok(FinitenessReport {
        rows,
        stabilized,
        warnings,
    })
}
