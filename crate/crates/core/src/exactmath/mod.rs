//! Exact arithmetic over the rationals and real quadratic fields, with
//! polynomial sign evaluation and real root isolation.

mod algebraic;
mod poly;
mod quad;
mod rational;

pub use algebraic::{AlgebraicValue, IsolationMode};
pub use poly::{BiPoly, UniPoly};
pub use quad::{quad_sign, sqrt_enclosure, QuadElem};
pub use rational::{
    decimal_ceil, decimal_floor, digits_for_width, exact_sqrt, floor_div, int,
    lcm_of_denominators, parse_rational, rat, simplest_between, ten_to_minus, to_f64, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("cannot parse rational number from {0:?}")]
    Parse(String),
    #[error("polynomial has no certified unique root in [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },
    #[error("degenerate interval: lo = {lo} exceeds hi = {hi}")]
    DegenerateInterval { lo: String, hi: String },
}
