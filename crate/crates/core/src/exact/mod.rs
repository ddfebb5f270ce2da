//! Exact arithmetic: big rationals, polynomials and reduced rational
//! functions in q, and the formal-radical extension.

mod eval;
pub mod json;
mod poly;
pub mod rational;
mod ratfunc;
mod scalar;

use thiserror::Error;

pub use eval::{eval_numeric, EvalError, QPoint};
pub use poly::Poly;
pub use ratfunc::{q_factorial, q_number, RatFunc};
pub use scalar::{RadicalMonomial, Radical, RadicandTable, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar {0} has more than one term and cannot be inverted")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
}
