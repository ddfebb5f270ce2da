use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::eval::EvalError;
use super::rational::{ratq_to_f64, ratq_to_string};
use super::ExactError;
use crate::{PolyQ, RatQ};

/// Reduced rational function in `q` over Q.
///
/// Canonical form: `gcd(num, den) = 1` and `den` has integer coefficients
/// with content one and a positive leading coefficient. Zero is `0/1`.
/// Two rational functions are equal iff their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    num: PolyQ,
    den: PolyQ,
}

fn ratq(n: i64) -> RatQ {
    RatQ::from_integer(n.into())
}

fn exact_quotient(a: &PolyQ, g: &PolyQ) -> PolyQ {
    if g.is_one() {
        return a.clone();
    }
    let (quot, rem) = a.div_rem(g);
    debug_assert!(rem.is_zero(), "inexact polynomial quotient");
    quot
}

/// Factor `c` such that `c * p` has coprime integer coefficients and a
/// positive leading coefficient.
fn primitive_scale(p: &PolyQ) -> RatQ {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for c in p.coeffs() {
        let scaled = c * RatQ::from_integer(lcm.clone());
        content = content.gcd(&scaled.to_integer());
    }
    let mut scale = RatQ::new(lcm, content);
    if p.leading().is_some_and(|lc| lc.is_negative()) {
        scale = -scale;
    }
    scale
}

impl RatFunc {
    /// Build `num / den` in canonical form.
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = (exact_quotient(&num, &g), exact_quotient(&den, &g));
        Self::rescale(num, den)
    }

    /// Canonical scaling of an already coprime pair.
    fn rescale(num: PolyQ, den: PolyQ) -> Self {
        let s = primitive_scale(&den);
        if s.is_one() {
            return RatFunc { num, den };
        }
        RatFunc {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFunc {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn from_ratq(c: RatQ) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratq(ratq(n))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(PolyQ::x())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = PolyQ::monomial(RatQ::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(mono)
        } else {
            RatFunc {
                num: PolyQ::one(),
                den: mono,
            }
        }
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is a rational number.
    pub fn as_constant(&self) -> Option<RatQ> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(RatQ::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0) / self.den.coeff(0)),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::rescale(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents of zero are rejected.
    pub fn powi(&self, k: i64) -> Result<Self, ExactError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn pole_error(&self, point: String, reserved: bool) -> EvalError {
        let denominator = self.den.to_string();
        if reserved {
            EvalError::ReservedPoint { point, denominator }
        } else {
            EvalError::Pole { point, denominator }
        }
    }

    /// Exact value at a rational point.
    pub fn eval_ratq(&self, x: &RatQ) -> Result<RatQ, EvalError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            let reserved = x.is_zero() || x.abs().is_one();
            return Err(self.pole_error(ratq_to_string(x), reserved));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Floating-point value at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64, EvalError> {
        let embed = |c: &RatQ| Complex64::new(ratq_to_f64(c), 0.0);
        let d = self.den.eval_as(&z, embed);
        if d.norm() == 0.0 {
            let reserved = z.im == 0.0 && (z.re == 0.0 || z.re.abs() == 1.0);
            return Err(self.pole_error(format!("{z}"), reserved));
        }
        Ok(self.num.eval_as(&z, embed) / d)
    }

    /// Split into `(numerator, denominator)` integer polynomials with the
    /// rational content of the numerator moved into integer factors.
    fn integer_parts(&self) -> (PolyQ, PolyQ) {
        if self.num.is_zero() {
            return (PolyQ::zero(), PolyQ::one());
        }
        let s = primitive_scale(&self.num).abs();
        let num = self.num.scale(&s);
        let den = self.den.scale(&s);
        let lcm = den
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let lcm = RatQ::from_integer(lcm);
        let (num, den) = (num.scale(&lcm), den.scale(&lcm));
        let g = RatQ::from_integer(num_gcd(&num).gcd(&num_gcd(&den)));
        (num.scale(&g.recip()), den.scale(&g.recip()))
    }

    /// LaTeX rendering, e.g. `\frac{q - 1}{q}`.
    pub fn to_latex(&self) -> String {
        let (num, den) = self.integer_parts();
        if den.is_one() {
            return poly_latex(&num);
        }
        let terms = num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if terms == 1 && num.leading().is_some_and(|lc| lc.is_negative()) {
            return format!("-\\frac{{{}}}{{{}}}", poly_latex(&-&num), poly_latex(&den));
        }
        format!("\\frac{{{}}}{{{}}}", poly_latex(&num), poly_latex(&den))
    }

    /// Symbolic value at `q = 1` if the reduced form has no pole there.
    pub fn classical_limit(&self) -> Option<RatQ> {
        self.eval_ratq(&RatQ::one()).ok()
    }
}

fn num_gcd(p: &PolyQ) -> BigInt {
    p.coeffs()
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(&c.to_integer()))
}

fn poly_latex(p: &PolyQ) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag_s = if mag.is_integer() {
            mag.to_integer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        };
        match k {
            0 => out.push_str(&mag_s),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag_s);
                }
                out.push('q');
                if k > 1 {
                    out.push_str(&format!("^{{{k}}}"));
                }
            }
        }
    }
    out
}

/// The q-number `[k] = (q^k - 1)/(q - 1)`: the polynomial
/// `1 + q + ... + q^(k-1)` for `k >= 0`, and `-(q^-1 + ... + q^k)` for `k < 0`.
pub fn q_number(k: i64) -> RatFunc {
    if k >= 0 {
        RatFunc::from_poly(PolyQ::new(vec![RatQ::one(); k as usize]))
    } else {
        let m = k.unsigned_abs() as usize;
        // -(q^(m-1) + ... + 1) / q^m
        let num = PolyQ::new(vec![-RatQ::one(); m]);
        RatFunc::rescale(num, PolyQ::monomial(RatQ::one(), m))
    }
}

/// q-factorial `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u32) -> RatFunc {
    (1..=i64::from(n)).fold(RatFunc::one(), |acc, k| &acc * &q_number(k))
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(PolyQ::one())
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let da = exact_quotient(&self.den, &g);
        let db = exact_quotient(&rhs.den, &g);
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        RatFunc::reduce(num, &self.den * &db)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &exact_quotient(&self.num, &g1) * &exact_quotient(&rhs.num, &g2);
        let den = &exact_quotient(&self.den, &g2) * &exact_quotient(&rhs.den, &g1);
        RatFunc::rescale(num, den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by the zero function; see [`RatFunc::checked_div`].
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<RatQ> for RatFunc {
    fn from(c: RatQ) -> Self {
        RatFunc::from_ratq(c)
    }
}

fn wrap(p: &PolyQ) -> String {
    let s = p.to_string();
    let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    let plain_int = terms == 1 && p.coeff(0).is_integer() && p.degree() == Some(0);
    if terms > 1 || (!plain_int && s.contains('*')) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_parts();
        if den.is_one() {
            return write!(f, "{num}");
        }
        let terms = num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let n = if terms > 1 { format!("({num})") } else { num.to_string() };
        write!(f, "{n}/{}", wrap(&den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Rational number to f64 without overflowing on large parts.
pub(crate) fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = num.bits().max(den.bits()).saturating_sub(900);
            let n = (num >> shift).to_f64().unwrap_or(0.0);
            let d = (den >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q()
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn q_number_values() {
        assert!(q_number(0).is_zero());
        assert_eq!(q_number(2), &c(1) + &q());
        assert_eq!(q_number(-1), -RatFunc::q_pow(-1));
        // direct definition (q^k - 1)/(q - 1)
        for k in -6..=6 {
            let direct = &(&RatFunc::q_pow(k) - &c(1)) / &(&q() - &c(1));
            assert_eq!(q_number(k), direct, "k = {k}");
        }
    }

    #[test]
    fn q_number_recurrence() {
        for k in -8..=8 {
            assert_eq!(q_number(k + 1), &c(1) + &(&q() * &q_number(k)));
        }
    }

    #[test]
    fn like_denominators_cancel() {
        let one_minus_q = &c(1) - &q();
        let a = &c(1) / &one_minus_q;
        let b = &q() / &one_minus_q;
        assert_eq!(&a - &b, c(1));
    }

    #[test]
    fn reduction_cancels_one_minus_q() {
        // (1 - q^(1-n))/((1-q)(1+q)) at n = 5
        let n = 5;
        let num = &c(1) - &RatFunc::q_pow(1 - n);
        let den = &(&c(1) - &q()) * &(&c(1) + &q());
        let r = &num / &den;
        // (q^4 - 1)/q^4 over (1-q)(1+q) leaves -(q^2 + 1)/q^4
        let expect = -(&(&RatFunc::q_pow(2) + &c(1)) / &RatFunc::q_pow(4));
        assert_eq!(r, expect);
        assert_eq!(r.den().degree(), Some(4));
        let x = RatQ::from_integer(3.into());
        let direct = num.eval_ratq(&x).unwrap() / den.eval_ratq(&x).unwrap();
        assert_eq!(r.eval_ratq(&x).unwrap(), direct);
    }

    #[test]
    fn inverse_and_zero_division() {
        let two = &c(1) + &q();
        assert_eq!(&two * &two.inv().unwrap(), c(1));
        assert!(RatFunc::zero().inv().is_err());
        assert!(RatFunc::new(PolyQ::one(), PolyQ::zero()).is_err());
    }

    #[test]
    fn canonical_denominator() {
        let r = &c(1) / &(&c(2) * &q());
        assert_eq!(r.den(), &PolyQ::x());
        assert_eq!(r.num().coeff(0), RatQ::new(1.into(), 2.into()));
        let s = &c(3) / &(&c(-6) - &(&c(4) * &q()));
        assert!(s.den().leading().unwrap().is_positive());
        assert!(s.den().coeffs().iter().all(|x| x.is_integer()));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatFunc::q_pow(-2).to_string(), "1/q^2");
        assert_eq!((-RatFunc::q_pow(-2)).to_string(), "-1/q^2");
        assert_eq!((&c(1) - &RatFunc::q_pow(-1)).to_string(), "(q - 1)/q");
        assert_eq!((&c(1) / &(&c(2) * &q())).to_string(), "1/(2*q)");
        assert_eq!((-RatFunc::q_pow(-2)).to_latex(), "-\\frac{1}{q^{2}}");
    }

    #[test]
    fn limit_at_one_after_reduction() {
        let r = &(&c(1) - &RatFunc::q_pow(-2)) / &(&(&c(1) - &q()) * &(&c(1) + &q()));
        assert_eq!(r.classical_limit(), Some(RatQ::from_integer((-1).into())));
    }

    #[test]
    fn powi_negative() {
        assert_eq!(q().powi(-3).unwrap(), RatFunc::q_pow(-3));
        assert_eq!((&c(1) + &q()).powi(0).unwrap(), c(1));
        assert!(RatFunc::zero().powi(-1).is_err());
    }
}
