//! Helpers for the big-rational coefficient domain.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ratfunc::big_ratio_to_f64;
use super::ExactError;
use crate::RatQ;

/// `"num/den"`, always with an explicit denominator.
pub fn ratq_to_string(r: &RatQ) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"a/b"` or `"a"` into a reduced rational.
pub fn parse_ratq(s: &str) -> Result<RatQ, ExactError> {
    let bad = || ExactError::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(RatQ::new(n, d))
}

pub fn ratq_to_f64(r: &RatQ) -> f64 {
    big_ratio_to_f64(r.numer(), r.denom())
}
