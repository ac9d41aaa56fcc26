use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::{cyclotomic_polynomial, CycPoly};
use super::rat::{display_rat, Rat};
use super::ArithError;

/// An element of ℚ(ζ_M) stored as its canonical residue modulo Φ_M in the
/// power basis `1, ζ, …, ζ^{φ(M)−1}`.
///
/// Zero is the all-zero coefficient vector, so equality is coefficient-wise.
/// Binary operations require equal orders; use [`CycNum::embed`] or
/// [`lift_pair`] to move operands into a common field first.
#[derive(Clone)]
pub struct CycNum {
    modulus: Arc<CycPoly>,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(order: usize) -> Result<Self, ArithError> {
        let modulus = cyclotomic_polynomial(order)?;
        let coeffs = vec![Rat::zero(); modulus.degree()];
        Ok(CycNum { modulus, coeffs })
    }

    pub fn one(order: usize) -> Result<Self, ArithError> {
        Self::from_rat(Rat::one(), order)
    }

    pub fn from_rat(r: Rat, order: usize) -> Result<Self, ArithError> {
        let mut z = Self::zero(order)?;
        z.coeffs[0] = r;
        Ok(z)
    }

    /// `ζ_M^k` for any integer `k`.
    pub fn root_of_unity(order: usize, k: i64) -> Result<Self, ArithError> {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rat::zero(); e + 1];
        raw[e] = Rat::one();
        Self::normalize(&raw, order)
    }

    /// Reduces `Σ raw[i]·ζ^i` to canonical form.
    pub fn normalize(raw: &[Rat], order: usize) -> Result<Self, ArithError> {
        let modulus = cyclotomic_polynomial(order)?;
        let coeffs = if raw.len() > order {
            let mut folded = vec![Rat::zero(); order];
            for (i, c) in raw.iter().enumerate() {
                if !c.is_zero() {
                    folded[i % order] += c;
                }
            }
            reduce(folded, &modulus)
        } else {
            reduce(raw.to_vec(), &modulus)
        };
        Ok(CycNum { modulus, coeffs })
    }

    pub fn order(&self) -> usize {
        self.modulus.order()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(One::is_one)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNum {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum {
            modulus: Arc::clone(&self.modulus),
            coeffs: {
                let mut v = vec![Rat::zero(); self.coeffs.len()];
                v[0] = Rat::one();
                v
            },
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_M.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let phi: Vec<Rat> = self
            .modulus
            .coeffs()
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rat> = Vec::new();
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // Φ_M is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let scaled: Vec<Rat> = s0.iter().map(|x| x / &c).collect();
        Self::normalize(&scaled, self.order())
    }

    /// Image under ζ_M ↦ ζ_{M'}^{M'/M}.
    pub fn embed(&self, new_order: usize) -> Result<Self, ArithError> {
        let order = self.order();
        if new_order % order != 0 {
            return Err(ArithError::IncompatibleOrders {
                from: order,
                to: new_order,
            });
        }
        if new_order == order {
            return Ok(self.clone());
        }
        let step = new_order / order;
        let mut raw = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::normalize(&raw, new_order)
    }

    fn check_order(&self, other: &CycNum) {
        assert_eq!(
            self.order(),
            other.order(),
            "cyclotomic orders differ; embed into a common order first"
        );
    }
}

/// Embeds both operands into ℚ(ζ_lcm).
pub fn lift_pair(a: &CycNum, b: &CycNum) -> Result<(CycNum, CycNum), ArithError> {
    let l = a.order().lcm(&b.order());
    Ok((a.embed(l)?, b.embed(l)?))
}

fn reduce(mut a: Vec<Rat>, modulus: &CycPoly) -> Vec<Rat> {
    let phi = modulus.coeffs();
    let deg = modulus.degree();
    if a.len() < deg {
        a.resize(deg, Rat::zero());
        return a;
    }
    for i in (deg..a.len()).rev() {
        if a[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut a[i], Rat::zero());
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if !pj.is_zero() {
                a[i - deg + j] -= &c * pj;
            }
        }
    }
    a.truncate(deg);
    a
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    if num.len() < den.len() {
        return (Vec::new(), trim(rem));
    }
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    let mut quot = vec![Rat::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            if !d.is_zero() {
                rem[i + j] -= &c * d;
            }
        }
        quot[i] = c;
    }
    rem.truncate(dn);
    (trim(quot), trim(rem))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        self.check_order(rhs);
        CycNum {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self.check_order(rhs);
        CycNum {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.check_order(rhs);
        let n = self.coeffs.len();
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycNum {
            modulus: Arc::clone(&self.modulus),
            coeffs: reduce(prod, &self.modulus),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order(), self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", display_rat(c))?,
                1 => write!(f, "{}*z{}", display_rat(c), self.order())?,
                _ => write!(f, "{}*z{}^{}", display_rat(c), self.order(), i)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
