//! Cyclotomic polynomials Φ_M, cached per order.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ArithError;

pub const DEFAULT_MAX_ORDER: usize = 10_000;

static MAX_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ORDER);

/// Sets the process-wide cap on cyclotomic orders.
pub fn set_max_order(cap: usize) {
    MAX_ORDER.store(cap.max(1), Ordering::Relaxed);
}

pub fn max_order() -> usize {
    MAX_ORDER.load(Ordering::Relaxed)
}

/// The M-th cyclotomic polynomial, coefficients from degree 0 upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<CycPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_M by exact division of X^M − 1 by Φ_d for every proper divisor d of M.
pub fn cyclotomic_polynomial(order: usize) -> Result<Arc<CycPoly>, ArithError> {
    if order == 0 {
        return Err(ArithError::ZeroOrder);
    }
    let cap = max_order();
    if order > cap {
        return Err(ArithError::OrderTooLarge { order, cap });
    }
    if let Some(p) = cache().lock().unwrap().get(&order) {
        return Ok(Arc::clone(p));
    }

    let mut poly = vec![BigInt::zero(); order + 1];
    poly[0] = -BigInt::one();
    poly[order] = BigInt::one();
    for d in divisors(order) {
        if d == order {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d)?;
        poly = exact_div_monic(&poly, phi_d.coeffs());
    }
    let built = Arc::new(CycPoly {
        order,
        coeffs: poly,
    });
    cache()
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&built));
    Ok(built)
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            if !dj.is_zero() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "non-exact cyclotomic division");
    quot
}
