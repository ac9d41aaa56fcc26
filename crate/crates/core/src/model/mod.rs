//! Equation instances: generators, log-rational exponents, polynomial
//! coefficients and exact exponential values.

mod alpha;
mod generators;
mod group;
mod poly;
mod system;

pub use alpha::{normalize_alpha, AlphaMatrix, LogCoord};
pub use generators::{
    coprime_base, mult_independent, valuation, ConcreteBase, GenSet, Generator, Independence,
    MultRelation,
};
pub use group::{exp_value, group_relation, radical_member, GroupVal};
pub use poly::{poly_eval, CycPolyMV};
pub use system::{validate_system, EqSystem, RawSystem};

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{ArithError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generators are multiplicatively dependent: relation {relation:?}")]
    DependentGenerators { relation: Vec<BigInt> },
    #[error("generator {name}: {reason}")]
    InvalidGenerator { name: String, reason: String },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("value {0} is not positive")]
    NonPositive(Rat),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
