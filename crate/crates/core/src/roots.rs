//! Order bounds for roots of unity in minimal vanishing sums
//!
//! A relation `a_0 + Σ_{j=1}^k a_j ζ^{n_j} = 0` with `ζ` of order `Q`,
//! `gcd(Q, n_1, …, n_k) = 1`, coefficients in a field `F` with
//! `δ = [F ∩ ℚ(ζ) : ℚ]` and no vanishing proper subsum forces
//!
//! - `p^{n+1} | Q  ⇒  pⁿ | 2δ` for every prime `p` and `n ≥ 1`, and
//! - `Σ_{p ∥ Q} ((p − 1)/gcd(δ, p − 1) − 1) ≤ k − 1`.
//!
//! [`enumerate_vanishing_sums`] finds such relations by brute force and is
//! the independent check on [`dz_order_bound`].

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{cyclotomic_polynomial, denom_lcm, factorize, Rat};
use crate::model::EqSystem;
use crate::{Error, Result};

/// `k` non-constant terms, intersection degree `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DzParams {
    k: usize,
    delta: usize,
}

impl DzParams {
    pub fn new(k: usize, delta: usize) -> Result<Self> {
        if k == 0 || delta == 0 {
            return Err(Error::InvalidParameter(format!(
                "need k ≥ 1 and δ ≥ 1, got k = {k}, δ = {delta}"
            )));
        }
        Ok(DzParams { k, delta })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCheck {
    pub prime: usize,
    /// Exponent of `prime` in `Q`.
    pub exponent: u32,
    /// `p^{e−1} | 2δ` (vacuous for `e ≤ 1`).
    pub divisibility_ok: bool,
    /// `(p − 1)/gcd(δ, p − 1) − 1` when `p ∥ Q`, else 0.
    pub contribution: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DzCheck {
    pub order: usize,
    pub primes: Vec<PrimeCheck>,
    pub contribution_sum: usize,
    /// `k − 1`.
    pub allowance: usize,
}

impl DzCheck {
    pub fn divisibility_ok(&self) -> bool {
        self.primes.iter().all(|p| p.divisibility_ok)
    }

    pub fn sum_ok(&self) -> bool {
        self.contribution_sum <= self.allowance
    }

    pub fn feasible(&self) -> bool {
        self.divisibility_ok() && self.sum_ok()
    }
}

fn contribution(p: usize, delta: usize) -> usize {
    (p - 1) / delta.gcd(&(p - 1)) - 1
}

fn prime_power_ok(p: usize, e: u32, delta: usize) -> bool {
    e <= 1 || (2 * delta) % p.pow(e - 1) == 0
}

pub fn dz_check(order: usize, params: DzParams) -> DzCheck {
    assert!(order >= 1, "order must be positive");
    let primes: Vec<PrimeCheck> = factorize(order)
        .into_iter()
        .map(|(p, e)| PrimeCheck {
            prime: p,
            exponent: e,
            divisibility_ok: prime_power_ok(p, e, params.delta),
            contribution: if e == 1 { contribution(p, params.delta) } else { 0 },
        })
        .collect();
    DzCheck {
        order,
        contribution_sum: primes.iter().map(|p| p.contribution).sum(),
        primes,
        allowance: params.k - 1,
    }
}

pub fn dz_feasible(order: usize, params: DzParams) -> bool {
    dz_check(order, params).feasible()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DzBound {
    pub params: DzParams,
    /// Largest feasible order.
    pub bound: usize,
    /// Every feasible order, ascending.
    pub feasible: Vec<usize>,
}

/// Above this many candidate primes the enumeration is refused.
const PRIME_LIMIT: usize = 10_000_000;

/// Every feasible `Q`, found by a search over prime powers.
///
/// A prime `p ∤ 2δ` may divide `Q` only to the first power and then
/// contributes at least `(p − 1)/δ − 1`, so `p ≤ kδ + 1`; a prime `p | 2δ`
/// divides `Q` at most `v_p(2δ) + 1` times. Contributions are nonnegative,
/// so branches exceeding the allowance are cut.
pub fn dz_order_bound(params: DzParams) -> Result<DzBound> {
    let limit = params
        .k
        .checked_mul(params.delta)
        .and_then(|x| x.checked_add(1))
        .filter(|&x| x <= PRIME_LIMIT)
        .ok_or_else(|| Error::InvalidParameter("k·δ too large to enumerate".into()))?;
    let two_delta = 2 * params.delta;
    let mut candidates: Vec<(usize, u32)> = primes_up_to(limit)
        .into_iter()
        .map(|p| (p, 1))
        .collect();
    for (p, e) in factorize(two_delta) {
        match candidates.iter_mut().find(|(q, _)| *q == p) {
            Some(c) => c.1 = e + 1,
            None => candidates.push((p, e + 1)),
        }
    }
    candidates.sort_unstable();

    let mut feasible = Vec::new();
    collect_feasible(&candidates, params, 1, 0, &mut feasible)?;
    feasible.sort_unstable();
    let bound = *feasible.last().expect("Q = 1 is always feasible");
    Ok(DzBound {
        params,
        bound,
        feasible,
    })
}

fn collect_feasible(
    candidates: &[(usize, u32)],
    params: DzParams,
    q: usize,
    sum: usize,
    out: &mut Vec<usize>,
) -> Result<()> {
    let Some((&(p, cap), rest)) = candidates.split_first() else {
        out.push(q);
        return Ok(());
    };
    collect_feasible(rest, params, q, sum, out)?;
    let mut pe = q;
    for e in 1..=cap {
        pe = pe
            .checked_mul(p)
            .ok_or_else(|| Error::InvalidParameter("order bound overflows".into()))?;
        let s = if e == 1 { sum + contribution(p, params.delta) } else { sum };
        if s > params.k - 1 {
            // Higher powers contribute nothing, so only the first power can fail here.
            continue;
        }
        if prime_power_ok(p, e, params.delta) {
            collect_feasible(rest, params, pe, s, out)?;
        }
    }
    Ok(())
}

fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i))
        .collect()
}

/// Order bound for the roots of unity in a relation among the `s` terms of
/// `sys` (one term plays the role of `a_0`, so `k = s − 1`).
pub fn system_order_bound(sys: &EqSystem, delta: usize) -> Result<usize> {
    if sys.s() < 2 {
        return Ok(1);
    }
    Ok(dz_order_bound(DzParams::new(sys.s() - 1, delta)?)?.bound)
}

/// `Σ_j coefficients[j]·ζ_Q^{exponents[j]} = 0`, minimal and normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VanishingSum {
    pub order: usize,
    /// `0 = n_0 < n_1 < … < n_k < Q`.
    pub exponents: Vec<usize>,
    pub coefficients: Vec<Rat>,
}

impl VanishingSum {
    /// `k`, the number of terms besides `a_0`.
    pub fn k(&self) -> usize {
        self.exponents.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub max_terms: usize,
    pub max_order: usize,
    pub coefficients: Vec<Rat>,
    /// Keep one representative per orbit under `ζ ↦ ζ^a`, `gcd(a, Q) = 1`.
    pub galois_dedup: bool,
}

/// Exhaustive search for minimal, normalized vanishing sums.
///
/// Powers of `ζ_Q` are integer vectors in the power basis modulo `Φ_Q`
/// (which is monic); coefficients are scaled to integers by a common
/// denominator. A depth-first walk over increasing exponent prefixes keeps
/// the running sum, and the closing term is found by table lookup of the
/// negated sum. Orders are searched in parallel and merged in order.
pub fn enumerate_vanishing_sums(spec: &EnumerationSpec) -> Result<Vec<VanishingSum>> {
    if spec.max_terms < 2 {
        return Err(Error::InvalidParameter("max_terms must be at least 2".into()));
    }
    let mut coeffs: Vec<Rat> = spec.coefficients.iter().filter(|c| !c.is_zero()).cloned().collect();
    coeffs.sort();
    coeffs.dedup();
    if coeffs.is_empty() {
        return Ok(Vec::new());
    }
    let scale = Rat::from_integer(denom_lcm(&coeffs));
    let scaled: Vec<i64> = coeffs
        .iter()
        .map(|c| (c * &scale).to_integer().to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidParameter("coefficients too large".into()))?;

    let per_order: Vec<Vec<VanishingSum>> = (1..=spec.max_order)
        .into_par_iter()
        .map(|q| sums_of_order(q, spec.max_terms, &scaled, &coeffs))
        .collect::<Result<_>>()?;
    let mut all: Vec<VanishingSum> = per_order.into_iter().flatten().collect();
    if spec.galois_dedup {
        all = dedup_galois(all);
    }
    Ok(all)
}

type Vector = Vec<i64>;

/// Integer coordinates of `ζ_Q^n`, `0 ≤ n < Q`.
fn power_vectors(q: usize) -> Result<Vec<Vector>> {
    let phi = cyclotomic_polynomial(q)?;
    let poly: Vec<i64> = phi
        .coeffs()
        .iter()
        .map(|c| c.to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidParameter(format!("order {q} too large")))?;
    let d = phi.degree();
    let mut out = Vec::with_capacity(q);
    let mut v = vec![0i64; d];
    v[0] = 1;
    for _ in 0..q {
        out.push(v.clone());
        // multiply by X, then reduce X^d = −Σ_{i<d} poly[i] X^i
        let top = v[d - 1];
        for i in (1..d).rev() {
            v[i] = v[i - 1] - top * poly[i];
        }
        v[0] = -top * poly[0];
    }
    Ok(out)
}

struct OrderSearch<'a> {
    q: usize,
    max_terms: usize,
    scaled: &'a [i64],
    powers: Vec<Vector>,
    /// `a·ζ^n ↦ [(n, index of a)]`.
    lookup: HashMap<Vector, Vec<(usize, usize)>>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
}

fn sums_of_order(
    q: usize,
    max_terms: usize,
    scaled: &[i64],
    coeffs: &[Rat],
) -> Result<Vec<VanishingSum>> {
    if q < 2 {
        return Ok(Vec::new());
    }
    let powers = power_vectors(q)?;
    let mut lookup: HashMap<Vector, Vec<(usize, usize)>> = HashMap::new();
    for (n, v) in powers.iter().enumerate().skip(1) {
        for (ci, &c) in scaled.iter().enumerate() {
            lookup
                .entry(v.iter().map(|x| c * x).collect())
                .or_default()
                .push((n, ci));
        }
    }
    let mut search = OrderSearch {
        q,
        max_terms,
        scaled,
        powers,
        lookup,
        found: Vec::new(),
    };
    for ci in 0..scaled.len() {
        let start: Vector = search.powers[0].iter().map(|x| scaled[ci] * x).collect();
        search.extend(&mut vec![0], &mut vec![ci], &start);
    }
    search.found.sort();
    Ok(search
        .found
        .into_iter()
        .map(|(exponents, idx)| VanishingSum {
            order: q,
            exponents,
            coefficients: idx.into_iter().map(|i| coeffs[i].clone()).collect(),
        })
        .collect())
}

impl OrderSearch<'_> {
    fn extend(&mut self, exps: &mut Vec<usize>, idx: &mut Vec<usize>, sum: &Vector) {
        let last = *exps.last().expect("prefix starts at n_0 = 0");
        let negated: Vector = sum.iter().map(|x| -x).collect();
        if let Some(hits) = self.lookup.get(&negated) {
            for &(n, ci) in hits {
                if n > last {
                    exps.push(n);
                    idx.push(ci);
                    if self.accept(exps, idx) {
                        self.found.push((exps.clone(), idx.clone()));
                    }
                    exps.pop();
                    idx.pop();
                }
            }
        }
        if exps.len() + 1 >= self.max_terms {
            return;
        }
        for n in last + 1..self.q {
            for ci in 0..self.scaled.len() {
                let c = self.scaled[ci];
                let next: Vector = sum.iter().zip(&self.powers[n]).map(|(s, p)| s + c * p).collect();
                // a vanishing prefix makes every extension non-minimal
                if next.iter().all(|x| *x == 0) {
                    continue;
                }
                exps.push(n);
                idx.push(ci);
                self.extend(exps, idx, &next);
                exps.pop();
                idx.pop();
            }
        }
    }

    fn accept(&self, exps: &[usize], idx: &[usize]) -> bool {
        let g = exps.iter().fold(self.q, |g, &n| g.gcd(&n));
        g == 1 && self.is_minimal(exps, idx)
    }

    fn is_minimal(&self, exps: &[usize], idx: &[usize]) -> bool {
        let len = exps.len();
        let dim = self.powers[0].len();
        (1..(1u64 << len) - 1).all(|mask| {
            let mut s = vec![0i64; dim];
            for j in (0..len).filter(|j| mask >> j & 1 == 1) {
                let c = self.scaled[idx[j]];
                for (x, p) in s.iter_mut().zip(&self.powers[exps[j]]) {
                    *x += c * p;
                }
            }
            s.iter().any(|x| *x != 0)
        })
    }
}

/// Keeps the first sum of each orbit under `ζ ↦ ζ^a`.
fn dedup_galois(sums: Vec<VanishingSum>) -> Vec<VanishingSum> {
    let mut seen: HashSet<(usize, Vec<(usize, Rat)>)> = HashSet::new();
    sums.into_iter()
        .filter(|s| {
            let q = s.order;
            let canon = (1..q.max(2))
                .filter(|a| a.gcd(&q) == 1)
                .map(|a| {
                    let mut terms: Vec<(usize, Rat)> = s
                        .exponents
                        .iter()
                        .zip(&s.coefficients)
                        .map(|(n, c)| (n * a % q, c.clone()))
                        .collect();
                    terms.sort();
                    terms
                })
                .min()
                .expect("a = 1 is a unit");
            seen.insert((q, canon))
        })
        .collect()
}
