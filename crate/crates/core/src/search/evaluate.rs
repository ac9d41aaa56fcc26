use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{max_order, ArithError, CycNum, Rat};
use crate::model::{exp_value, EqSystem, GroupVal};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMode {
    /// Refuse points where a symbolic generator gets a fractional exponent.
    ExactOnly,
    AllowGrouped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZeroMode {
    /// Every term lies in one cyclotomic field; the zero test is unconditional.
    ExactCyclotomic,
    /// Terms are split by radical class; a "nonzero" verdict assumes the
    /// classes are linearly independent over the cyclotomic field.
    GroupedRadical,
}

impl ZeroMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroMode::ExactCyclotomic => "exact_cyclotomic",
            ZeroMode::GroupedRadical => "grouped_radical",
        }
    }
}

impl fmt::Display for ZeroMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `P_i(q)·exp(q·α_i)` for one term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermValue {
    pub poly_value: CycNum,
    pub exponential: GroupVal,
    /// The product as one cyclotomic number, when the exponential is a
    /// rational power of concrete generators with integral exponents in the
    /// coprime base.
    pub value: Option<CycNum>,
}

/// Terms sharing a radical class: the same fractional parts of their
/// exponents relative to the first term (over the coprime base of the
/// concrete generators) and the same exponents of the symbolic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub key: Vec<Rat>,
    pub members: Vec<usize>,
    /// Sum of the members' cyclotomic parts.
    pub coefficient: CycNum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermGrouping {
    pub terms: Vec<TermValue>,
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub grouping: TermGrouping,
    pub is_zero: bool,
    pub zero_mode: ZeroMode,
}

/// Per-term data for zero tests on arbitrary subsets of terms.
#[derive(Debug, Clone)]
pub(crate) struct Prepared {
    /// Group index and cyclotomic part of each term.
    pub contributions: Vec<(usize, CycNum)>,
    pub keys: Vec<Vec<Rat>>,
    pub zero_mode: ZeroMode,
}

impl Prepared {
    /// Zero test for the sum of the terms selected by `mask`.
    pub fn subset_is_zero(&self, mask: impl Fn(usize) -> bool) -> bool {
        let order = self.contributions.first().map_or(1, |(_, c)| c.order());
        let mut sums: Vec<Option<CycNum>> = vec![None; self.keys.len()];
        for (i, (g, c)) in self.contributions.iter().enumerate() {
            if mask(i) {
                sums[*g] = Some(match sums[*g].take() {
                    Some(acc) => &acc + c,
                    None => c.clone(),
                });
            }
        }
        debug_assert!(self.contributions.iter().all(|(_, c)| c.order() == order));
        sums.iter().all(|s| s.as_ref().is_none_or(CycNum::is_zero))
    }
}

fn rat_pow(base: &BigInt, e: &BigInt) -> Result<Rat> {
    let k = e
        .abs()
        .to_usize()
        .ok_or_else(|| Error::InvalidParameter("exponent too large".into()))?;
    let p = Rat::from_integer(num_traits::pow(base.clone(), k));
    Ok(if e.is_negative() { p.recip() } else { p })
}

/// Coordinates of an exponent vector over the coprime base (concrete
/// generators) followed by the symbolic generators' own exponents.
fn base_exponents(sys: &EqSystem, expvec: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let base = sys.genset().base();
    let mut concrete = vec![Rat::zero(); base.elements.len()];
    let mut symbolic = Vec::new();
    for (e, val) in expvec.iter().zip(&base.valuations) {
        match val {
            Some(v) => {
                for (acc, k) in concrete.iter_mut().zip(v) {
                    *acc += e * Rat::from_integer(k.clone());
                }
            }
            None => symbolic.push(e.clone()),
        }
    }
    (concrete, symbolic)
}

fn root_of_unity_at(angle: &Rat, order: usize) -> Result<CycNum> {
    let k = (angle * Rat::from_integer(BigInt::from(order)))
        .to_integer()
        .to_i64()
        .expect("angle lies in [0, 1)");
    Ok(CycNum::root_of_unity(order, k)?)
}

/// `lcm(M, root orders)`, checked against the cyclotomic cap.
fn field_order(m: usize, values: &[GroupVal]) -> Result<usize> {
    let l = values
        .iter()
        .fold(BigInt::from(m), |l, g| l.lcm(&g.root_order()));
    let cap = max_order();
    match l.to_usize() {
        Some(l) if l <= cap => Ok(l),
        _ => Err(ArithError::OrderTooLarge {
            order: l.to_usize().unwrap_or(usize::MAX),
            cap,
        }
        .into()),
    }
}

pub(crate) fn prepare(sys: &EqSystem, q: &[Rat], mode: EvalMode) -> Result<Prepared> {
    assert_eq!(q.len(), sys.t(), "point has wrong dimension");
    let base = sys.genset().base();
    let relatives: Vec<GroupVal> = sys.alpha_prime().rows().iter().map(|r| exp_value(r, q)).collect();

    let order = field_order(sys.order(), &relatives)?;

    let mut keys: Vec<Vec<Rat>> = Vec::new();
    let mut contributions = Vec::with_capacity(sys.s());
    let mut fractional = false;
    for (poly, rel) in sys.polys().iter().zip(&relatives) {
        let (concrete, symbolic) = base_exponents(sys, rel.expvec());
        if symbolic.iter().any(|e| !e.is_integer()) {
            if mode == EvalMode::ExactOnly {
                return Err(Error::RequiresGroupedMode);
            }
            fractional = true;
        }
        let mut scale = Rat::one();
        let mut key = Vec::with_capacity(concrete.len() + symbolic.len());
        for (b, e) in base.elements.iter().zip(&concrete) {
            let floor = e.floor();
            let part = e - &floor;
            if !part.is_zero() {
                fractional = true;
            }
            scale *= rat_pow(b, &floor.to_integer())?;
            key.push(part);
        }
        key.extend(symbolic);
        let value = poly
            .eval(q)
            .embed(order)?
            .scale(&scale);
        let value = &value * &root_of_unity_at(rel.angle(), order)?;
        let g = match keys.iter().position(|k| *k == key) {
            Some(g) => g,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        contributions.push((g, value));
    }

    let zero_mode = if fractional {
        ZeroMode::GroupedRadical
    } else {
        ZeroMode::ExactCyclotomic
    };
    Ok(Prepared {
        contributions,
        keys,
        zero_mode,
    })
}

fn term_values(sys: &EqSystem, q: &[Rat]) -> Result<Vec<TermValue>> {
    let base = sys.genset().base();
    let mut terms = Vec::with_capacity(sys.s());
    for (poly, row) in sys.polys().iter().zip(sys.alpha().rows()) {
        let orig = exp_value(row, q);
        let poly_value = poly.eval(q);
        let (concrete, symbolic) = base_exponents(sys, orig.expvec());
        let integral = concrete.iter().all(Rat::is_integer) && symbolic.iter().all(Zero::is_zero);
        let value = if integral {
            let scale = base
                .elements
                .iter()
                .zip(&concrete)
                .map(|(b, e)| rat_pow(b, &e.to_integer()))
                .product::<Result<Rat>>()?;
            let l = field_order(sys.order(), std::slice::from_ref(&orig))?;
            let z = root_of_unity_at(orig.angle(), l)?;
            Some(&poly_value.embed(l)?.scale(&scale) * &z)
        } else {
            None
        };
        terms.push(TermValue {
            poly_value,
            exponential: orig,
            value,
        });
    }

    Ok(terms)
}

/// Evaluates the equation at `q` and decides whether it vanishes.
///
/// Every term is divided by the first term's exponential, which does not
/// change the zero set or which subsets vanish. Relative exponents are
/// split over the coprime base into integer parts, folded into the term's
/// cyclotomic coefficient as rational factors, and fractional parts, which
/// key the radical class.
pub fn evaluate_at(sys: &EqSystem, q: &[Rat], mode: EvalMode) -> Result<Evaluation> {
    let prepared = prepare(sys, q, mode)?;
    let terms = term_values(sys, q)?;
    let mut groups: Vec<Group> = prepared
        .keys
        .iter()
        .map(|k| Group {
            key: k.clone(),
            members: Vec::new(),
            coefficient: CycNum::zero(prepared.contributions[0].1.order()).expect("order already built"),
        })
        .collect();
    for (i, (g, c)) in prepared.contributions.iter().enumerate() {
        groups[*g].members.push(i);
        groups[*g].coefficient = &groups[*g].coefficient + c;
    }
    let is_zero = groups.iter().all(|g| g.coefficient.is_zero());
    Ok(Evaluation {
        grouping: TermGrouping { terms, groups },
        is_zero,
        zero_mode: prepared.zero_mode,
    })
}
