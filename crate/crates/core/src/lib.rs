//! Exact analysis of rational solutions of polynomial-exponential equations
//!
//! ```text
//! Σ_i P_i(X) · exp(X · α_i) = 0,    X = (X_1, …, X_t)
//! ```
//!
//! over the log-rational class `α_ij = 2πi·ρ_ij + Σ_m c_ijm · log g_m` with
//! rational `ρ`, `c` and multiplicatively independent positive rational (or
//! free symbolic) generators `g_m`. In this class every quantity involved is
//! exactly computable:
//!
//! - [`arith`]: rationals and cyclotomic fields with canonical zero tests.
//! - [`linalg`]: rational RREF, Hermite/Smith forms, integer lattices.
//! - [`model`]: equation instances and exact exponential values.
//! - [`subspace`]: the equalizing subspace `V`, its complement and
//!   projections, the relation lattice `H` and congruence lattices.
//! - [`roots`]: order bounds for roots of unity in minimal vanishing sums,
//!   with a brute-force enumerator as oracle.
//! - [`specialize`]: nonsingular evaluation certificates for polynomial tuples.
//! - [`search`]: bounded-denominator solution search, nondegeneracy
//!   classification and empirical certificates.

pub mod arith;
pub mod catalog;
pub mod linalg;
pub mod model;
pub mod roots;
pub mod search;
pub mod specialize;
pub mod subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("requires grouped mode: symbolic generator raised to a fractional power")]
    RequiresGroupedMode,
    #[error("subset explosion: {terms} terms exceeds the cap of {cap}")]
    SubsetExplosion { terms: usize, cap: usize },
    #[error("search too large: {cardinality} grid points exceeds the cap of {cap}")]
    SearchTooLarge { cardinality: String, cap: u64 },
    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("all-zero polynomial tuple")]
    ZeroTuple,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
