use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ModelError;
use crate::arith::{ArithError, CycNum, Rat};

/// Multivariate polynomial with coefficients in ℚ(ζ_M).
///
/// Exponent vectors are distinct keys and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPolyMV {
    order: usize,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl CycPolyMV {
    pub fn zero(order: usize, nvars: usize) -> Self {
        CycPolyMV {
            order,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Sums duplicate monomials and drops zero coefficients.
    pub fn from_terms(
        order: usize,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, CycNum)>,
    ) -> Result<Self, ModelError> {
        let mut p = Self::zero(order, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(ModelError::Dimension(format!(
                    "monomial has {} exponents, expected {nvars}",
                    exps.len()
                )));
            }
            if c.order() != order {
                return Err(ModelError::Dimension(format!(
                    "coefficient of order {} in a polynomial of order {order}",
                    c.order()
                )));
            }
            p.add_term(exps, &c);
        }
        Ok(p)
    }

    pub fn constant(c: CycNum, nvars: usize) -> Self {
        let order = c.order();
        let mut p = Self::zero(order, nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn from_rat(r: Rat, order: usize, nvars: usize) -> Result<Self, ArithError> {
        Ok(Self::constant(CycNum::from_rat(r, order)?, nvars))
    }

    /// The monomial `X^exps` with coefficient 1.
    pub fn monomial(exps: Vec<u32>, order: usize) -> Result<Self, ArithError> {
        let nvars = exps.len();
        let mut p = Self::zero(order, nvars);
        p.add_term(exps, &CycNum::one(order)?);
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: &CycNum) {
        let sum = match self.terms.get(&exps) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, sum);
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&CycNum> {
        self.terms.get(exps)
    }

    /// The term with the largest exponent vector.
    pub fn leading(&self) -> Option<(&Vec<u32>, &CycNum)> {
        self.terms.iter().next_back()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add(&self, other: &CycPolyMV) -> CycPolyMV {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> CycPolyMV {
        let mut out = Self::zero(self.order, self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    pub fn mul(&self, other: &CycPolyMV) -> CycPolyMV {
        let mut out = Self::zero(self.order, self.nvars);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, &(a * b));
            }
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rat]) -> CycNum {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut acc = CycNum::zero(self.order).expect("order validated at construction");
        for (exps, c) in &self.terms {
            let mono = exps
                .iter()
                .zip(point)
                .fold(Rat::one(), |m, (&e, x)| m * x.pow(e as i32));
            if !mono.is_zero() {
                acc = &acc + &c.scale(&mono);
            }
        }
        acc
    }

    /// Evaluation at a point with cyclotomic coordinates.
    pub fn eval_cyc(&self, point: &[CycNum]) -> CycNum {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut acc = CycNum::zero(self.order).expect("order validated at construction");
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (&e, x) in exps.iter().zip(point) {
                if e > 0 {
                    term = &term * &x.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

pub fn poly_eval(p: &CycPolyMV, q: &[Rat]) -> CycNum {
    p.eval(q)
}
