use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ModelError;
use crate::arith::Rat;
use crate::linalg::{integer_kernel, ZMat};

/// A named generator `g_m`; `value == None` makes it a free symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub value: Option<Rat>,
}

impl Generator {
    pub fn concrete(name: &str, value: Rat) -> Self {
        Generator {
            name: name.to_string(),
            value: Some(value),
        }
    }

    pub fn symbol(name: &str) -> Self {
        Generator {
            name: name.to_string(),
            value: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Verified,
    /// Some generators are free symbols; their independence is an assumption.
    AssumedSymbolic,
    Refuted(Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultRelation {
    Independent,
    /// Nonzero `e` with `∏ v_i^{e_i} = 1`.
    Relation(Vec<BigInt>),
}

/// Pairwise coprime integers `b_k > 1`, none a perfect power, in which every
/// concrete generator factors as `g_m = ∏ b_k^{val[m][k]}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConcreteBase {
    pub elements: Vec<BigInt>,
    /// One row per generator; `None` for symbolic generators.
    pub valuations: Vec<Option<Vec<BigInt>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    generators: Vec<Generator>,
    independence: Independence,
    base: ConcreteBase,
}

impl GenSet {
    pub fn new(generators: Vec<Generator>) -> Result<Self, ModelError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(ModelError::DuplicateGenerator(g.name.clone()));
            }
            if let Some(v) = &g.value {
                if !v.is_positive() {
                    return Err(ModelError::InvalidGenerator {
                        name: g.name.clone(),
                        reason: "value must be positive".into(),
                    });
                }
                if v.is_one() {
                    return Err(ModelError::InvalidGenerator {
                        name: g.name.clone(),
                        reason: "value 1 generates the trivial group".into(),
                    });
                }
            }
        }
        let concrete: Vec<(usize, Rat)> = generators
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.value.clone().map(|v| (i, v)))
            .collect();
        let values: Vec<Rat> = concrete.iter().map(|(_, v)| v.clone()).collect();
        let independence = match mult_independent(&values)? {
            MultRelation::Relation(rel) => {
                let mut full = vec![BigInt::zero(); generators.len()];
                for ((i, _), e) in concrete.iter().zip(rel) {
                    full[*i] = e;
                }
                Independence::Refuted(full)
            }
            MultRelation::Independent if concrete.len() < generators.len() => {
                Independence::AssumedSymbolic
            }
            MultRelation::Independent => Independence::Verified,
        };
        let base = build_base(&generators);
        Ok(GenSet {
            generators,
            independence,
            base,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn independence(&self) -> &Independence {
        &self.independence
    }

    pub fn all_concrete(&self) -> bool {
        self.generators.iter().all(|g| g.value.is_some())
    }

    pub fn base(&self) -> &ConcreteBase {
        &self.base
    }
}

/// Decides multiplicative independence of positive rationals.
///
/// Numerators and denominators are split over a common coprime base (which
/// yields the same exponent lattice as a prime factorization without
/// factoring), and a relation is read off the integer kernel of the
/// transposed exponent matrix.
pub fn mult_independent(values: &[Rat]) -> Result<MultRelation, ModelError> {
    if let Some(v) = values.iter().find(|v| !v.is_positive()) {
        return Err(ModelError::NonPositive(v.clone()));
    }
    if let Some(i) = values.iter().position(One::is_one) {
        let mut e = vec![BigInt::zero(); values.len()];
        e[i] = BigInt::one();
        return Ok(MultRelation::Relation(e));
    }
    if values.is_empty() {
        return Ok(MultRelation::Independent);
    }
    let ints: Vec<BigInt> = values
        .iter()
        .flat_map(|v| [v.numer().clone(), v.denom().clone()])
        .collect();
    let base = coprime_base(&ints);
    let exps: Vec<Vec<BigInt>> = values.iter().map(|v| rational_valuations(v, &base)).collect();
    let lattice = integer_kernel(&ZMat::new(exps, base.len()).transpose());
    Ok(match lattice.basis().first() {
        Some(rel) => MultRelation::Relation(rel.clone()),
        None => MultRelation::Independent,
    })
}

/// Refines integers into a set of pairwise coprime factors `> 1`.
pub fn coprime_base(values: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = Vec::new();
    let mut pending: Vec<BigInt> = values
        .iter()
        .map(|v| v.abs())
        .filter(|v| v > &BigInt::one())
        .collect();
    while let Some(x) = pending.pop() {
        if x.is_one() {
            continue;
        }
        match base.iter().position(|b| !b.gcd(&x).is_one()) {
            Some(i) => {
                let b = base.swap_remove(i);
                let g = b.gcd(&x);
                pending.push(&b / &g);
                pending.push(&x / &g);
                pending.push(g);
            }
            None => base.push(x),
        }
    }
    base.sort();
    base
}

pub fn valuation(n: &BigInt, b: &BigInt) -> BigInt {
    let mut n = n.abs();
    let mut e = BigInt::zero();
    while !n.is_zero() && n.is_multiple_of(b) {
        n /= b;
        e += 1;
    }
    e
}

fn rational_valuations(v: &Rat, base: &[BigInt]) -> Vec<BigInt> {
    base.iter()
        .map(|b| valuation(v.numer(), b) - valuation(v.denom(), b))
        .collect()
}

/// Largest `k` with `b = r^k`, together with `r`.
fn perfect_power_root(b: &BigInt) -> (BigInt, u32) {
    let bits = b.bits() as u32;
    for k in (2..=bits).rev() {
        let r = b.nth_root(k);
        if num_traits::pow(r.clone(), k as usize) == *b {
            return (r, k);
        }
    }
    (b.clone(), 1)
}

fn build_base(generators: &[Generator]) -> ConcreteBase {
    let ints: Vec<BigInt> = generators
        .iter()
        .filter_map(|g| g.value.as_ref())
        .flat_map(|v| [v.numer().clone(), v.denom().clone()])
        .collect();
    let coarse = coprime_base(&ints);
    let roots: Vec<(BigInt, u32)> = coarse.iter().map(perfect_power_root).collect();
    let valuations = generators
        .iter()
        .map(|g| {
            g.value.as_ref().map(|v| {
                rational_valuations(v, &coarse)
                    .into_iter()
                    .zip(&roots)
                    .map(|(e, (_, k))| e * BigInt::from(*k))
                    .collect()
            })
        })
        .collect();
    ConcreteBase {
        elements: roots.into_iter().map(|(r, _)| r).collect(),
        valuations,
    }
}
