//! Exact rationals and cyclotomic-field arithmetic.

mod cycnum;
mod cyclotomic;
mod rat;

pub use cycnum::{lift_pair, CycNum};
pub use cyclotomic::{
    cyclotomic_polynomial, divisors, euler_phi, factorize, max_order, set_max_order, CycPoly,
    DEFAULT_MAX_ORDER,
};
pub use rat::{
    clear_denominators, denom_lcm, display_rat, display_vec, format_rat, frac, int, parse_rat,
    rat, sup_norm, Rat,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("order too large: {order} exceeds the cyclotomic degree cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible orders: {from} does not divide {to}")]
    IncompatibleOrders { from: usize, to: usize },
    #[error("floats forbidden: {text:?}{}", hint.as_ref().map(|h| format!("; write {h}")).unwrap_or_default())]
    FloatForbidden { text: String, hint: Option<String> },
    #[error("not a rational number: {0:?}")]
    BadRational(String),
}
