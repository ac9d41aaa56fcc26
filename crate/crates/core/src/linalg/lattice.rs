use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::qmat::QMat;
use super::zmat::{det, hnf, kernel_generators, ZMat};
use super::LinalgError;
use crate::arith::{clear_denominators, denom_lcm, sup_norm, Rat};

/// A sublattice of ℤᵗ stored by its canonical row Hermite basis, so two
/// lattices are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZLattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl ZLattice {
    pub fn from_generators(rows: Vec<Vec<BigInt>>, dim: usize) -> Self {
        let basis = hnf(&ZMat::new(rows, dim)).into_rows();
        ZLattice { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        ZLattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(ZMat::identity(dim).into_rows(), dim)
    }

    /// `k·ℤ` inside ℤ¹.
    pub fn multiples(k: i64) -> Self {
        Self::from_generators(vec![vec![BigInt::from(k)]], 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    fn pivot(&self, i: usize) -> usize {
        self.basis[i]
            .iter()
            .position(|x| !x.is_zero())
            .expect("Hermite basis rows are nonzero")
    }

    /// Coefficients of `v` in the Hermite basis, or `None` if `v ∉ L`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (i, row) in self.basis.iter().enumerate() {
            let p = self.pivot(i);
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical coset representative of `v + L`: each pivot coordinate is
    /// reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut rest = v.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let p = self.pivot(i);
            let q = rest[p].div_floor(&row[p]);
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        rest
    }

    pub fn intersect(&self, other: &ZLattice) -> Result<ZLattice, LinalgError> {
        self.check_dim(other)?;
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(ZLattice::zero(self.dim));
        }
        // (x, y) with x·B1 − y·B2 = 0; the intersection is spanned by x·B1.
        let stacked: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|r| r.iter().map(|x| -x).collect()))
            .collect();
        let relations = kernel_generators(&ZMat::new(stacked, self.dim).transpose());
        let r1 = self.rank();
        let gens = relations
            .iter()
            .map(|rel| {
                (0..self.dim)
                    .map(|c| {
                        rel[..r1]
                            .iter()
                            .zip(&self.basis)
                            .fold(BigInt::zero(), |acc, (x, b)| acc + x * &b[c])
                    })
                    .collect()
            })
            .collect();
        Ok(ZLattice::from_generators(gens, self.dim))
    }

    pub fn is_sublattice_of(&self, sup: &ZLattice) -> bool {
        self.dim == sup.dim && self.basis.iter().all(|b| sup.contains(b))
    }

    /// `[sup : self]`, infinite when the ranks differ.
    pub fn index_in(&self, sup: &ZLattice) -> Result<LatticeIndex, LinalgError> {
        self.check_dim(sup)?;
        if !self.is_sublattice_of(sup) {
            return Err(LinalgError::NotSublattice);
        }
        if self.rank() != sup.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        let coords: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|b| sup.coordinates(b).expect("checked membership"))
            .collect();
        Ok(LatticeIndex::Finite(det(&ZMat::new(coords, sup.rank())).abs()))
    }

    /// A lattice point minimizing the sup-norm distance to `target`, ties
    /// broken by the lexicographically smallest point.
    ///
    /// Exhaustive: coefficients are enumerated depth-first along the Hermite
    /// basis, where pivot coordinate `i` depends only on coefficients `0..=i`,
    /// so each coefficient ranges over the finite interval that keeps that
    /// coordinate within the best distance found so far.
    pub fn nearest_point(&self, target: &[Rat]) -> (Vec<BigInt>, Rat) {
        assert_eq!(target.len(), self.dim);
        let origin = vec![BigInt::zero(); self.dim];
        let mut best = NearestSearch {
            lattice: self,
            target,
            pivots: (0..self.rank()).map(|i| self.pivot(i)).collect(),
            best_dist: sup_norm(target),
            best_point: origin,
        };
        if self.rank() > 0 {
            let mut coeffs = Vec::with_capacity(self.rank());
            best.descend(&mut coeffs);
        }
        (best.best_point, best.best_dist)
    }

    fn check_dim(&self, other: &ZLattice) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

struct NearestSearch<'a> {
    lattice: &'a ZLattice,
    target: &'a [Rat],
    pivots: Vec<usize>,
    best_dist: Rat,
    best_point: Vec<BigInt>,
}

impl NearestSearch<'_> {
    fn descend(&mut self, coeffs: &mut Vec<BigInt>) {
        let lattice = self.lattice;
        let basis = &lattice.basis;
        let level = coeffs.len();
        if level == basis.len() {
            let point: Vec<BigInt> = (0..self.lattice.dim)
                .map(|c| {
                    coeffs
                        .iter()
                        .zip(basis)
                        .fold(BigInt::zero(), |acc, (k, b)| acc + k * &b[c])
                })
                .collect();
            let dist = point
                .iter()
                .zip(self.target)
                .map(|(p, t)| (Rat::from_integer(p.clone()) - t).abs())
                .max()
                .unwrap_or_else(Rat::zero);
            match dist.cmp(&self.best_dist) {
                Ordering::Less => {
                    self.best_dist = dist;
                    self.best_point = point;
                }
                Ordering::Equal if point < self.best_point => self.best_point = point,
                _ => {}
            }
            return;
        }
        let p = self.pivots[level];
        let partial: BigInt = coeffs
            .iter()
            .zip(basis)
            .fold(BigInt::zero(), |acc, (k, b)| acc + k * &b[p]);
        let h = Rat::from_integer(basis[level][p].clone());
        let centre = &self.target[p] - Rat::from_integer(partial);
        let lo = ((&centre - &self.best_dist) / &h).ceil().to_integer();
        let mut c = lo;
        // The upper end shrinks as better points are found.
        while Rat::from_integer(c.clone()) <= (&centre + &self.best_dist) / &h {
            coeffs.push(c.clone());
            self.descend(coeffs);
            coeffs.pop();
            c += 1;
        }
    }
}

/// All integer vectors `n` with `a · n = 0`.
pub fn integer_kernel(a: &ZMat) -> ZLattice {
    ZLattice::from_generators(kernel_generators(a), a.ncols())
}

/// `{n ∈ ℤᵗ : (A·n)_r ∈ modulus_r·ℤ for every row r}`.
///
/// Each row is scaled to integers `a_r / d_r`, one auxiliary column carrying
/// `−modulus_r·d_r` is appended, and the integer kernel is projected back
/// onto the first `t` coordinates.
pub fn congruence_lattice(a: &QMat, moduli: &[BigInt]) -> Result<ZLattice, LinalgError> {
    let (rows, t) = (a.rows(), a.cols());
    if moduli.len() != rows {
        return Err(LinalgError::DimensionMismatch {
            expected: rows,
            found: moduli.len(),
        });
    }
    if moduli.iter().any(|m| !m.is_positive()) {
        return Err(LinalgError::InvalidModulus);
    }
    let aux: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let d = denom_lcm(a.row(r));
            let mut row = clear_denominators(a.row(r));
            row.extend((0..rows).map(|k| {
                if k == r {
                    -(&moduli[r] * &d)
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let ker = integer_kernel(&ZMat::new(aux, t + rows));
    let projected = ker.basis.iter().map(|b| b[..t].to_vec()).collect();
    Ok(ZLattice::from_generators(projected, t))
}

/// Lattice with a single generator `g` in each listed coordinate direction.
pub fn diagonal_lattice(diag: &[BigInt]) -> ZLattice {
    let dim = diag.len();
    let rows = diag
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut r = vec![BigInt::zero(); dim];
            r[i] = g.clone();
            r
        })
        .collect();
    ZLattice::from_generators(rows, dim)
}
