//! Numeric specialization of exact values at a point q0.

use num_complex::Complex64;
use thiserror::Error;

use super::rational::{ratq_to_f64, ratq_to_string};
use super::scalar::{Radical, Scalar};
use crate::RatQ;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("pole at q = {point}: denominator {denominator} vanishes")]
    Pole { point: String, denominator: String },
    #[error("q = {point} is a reserved point: denominator {denominator} vanishes there")]
    ReservedPoint { point: String, denominator: String },
}

/// Where to specialize q.
#[derive(Debug, Clone, PartialEq)]
pub enum QPoint {
    Rational(RatQ),
    Complex(Complex64),
}

impl QPoint {
    pub fn label(&self) -> String {
        match self {
            QPoint::Rational(r) => ratq_to_string(r),
            QPoint::Complex(z) => format!("{z}"),
        }
    }
}

impl From<RatQ> for QPoint {
    fn from(r: RatQ) -> Self {
        QPoint::Rational(r)
    }
}

fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        Complex64::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    }
}

fn eval_radical(r: &Radical, at: &QPoint) -> Result<Complex64, EvalError> {
    match at {
        QPoint::Rational(x) => {
            let v = ratq_to_f64(&r.radicand().eval_ratq(x)?);
            Ok(principal_sqrt(Complex64::new(v, 0.0)))
        }
        QPoint::Complex(z) => Ok(principal_sqrt(r.radicand().eval_complex(*z)?)),
    }
}

/// Substitute `q = at` and return a complex double. Radicals use the
/// principal branch, so negative real radicands give `+i * sqrt(|w|)`.
/// Rational coefficients are evaluated exactly before conversion.
pub fn eval_numeric(s: &Scalar, at: &QPoint) -> Result<Complex64, EvalError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (mono, coeff) in s.terms() {
        let mut term = match at {
            QPoint::Rational(x) => Complex64::new(ratq_to_f64(&coeff.eval_ratq(x)?), 0.0),
            QPoint::Complex(z) => coeff.eval_complex(*z)?,
        };
        for r in mono.radicals() {
            term *= eval_radical(r, at)?;
        }
        acc += term;
    }
    Ok(acc)
}
