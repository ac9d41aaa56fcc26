//! Exact rational matrices and integer lattices.

mod lattice;
mod qmat;
mod zmat;

pub use lattice::{congruence_lattice, diagonal_lattice, integer_kernel, LatticeIndex, ZLattice};
pub use qmat::{rank, rref_kernel, QMat, RrefKernel};
pub use zmat::{det, hnf, hnf_with_transform, snf, HnfResult, SnfResult, ZMat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid modulus: moduli must be positive")]
    InvalidModulus,
    #[error("lattice is not contained in the claimed superlattice")]
    NotSublattice,
}
