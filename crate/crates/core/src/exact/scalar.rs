use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ExactError;
use crate::RatFuncQ;

/// Formal square root of a rational function. Never built for the
/// radicands 0 and 1, which fold into plain coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radical(Arc<RatFuncQ>);

impl Radical {
    pub fn radicand(&self) -> &RatFuncQ {
        &self.0
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.0)
    }
}

/// Product of distinct radicals, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct RadicalMonomial(Vec<Radical>);

impl RadicalMonomial {
    pub fn one() -> Self {
        RadicalMonomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn radicals(&self) -> &[Radical] {
        &self.0
    }

    /// Build from arbitrary radicals. Repeated radicals pair off into the
    /// returned rational factor.
    pub fn from_radicals(mut rads: Vec<Radical>) -> (Self, RatFuncQ) {
        rads.sort();
        let mut out: Vec<Radical> = Vec::with_capacity(rads.len());
        let mut factor = RatFuncQ::one();
        for r in rads {
            if out.last() == Some(&r) {
                out.pop();
                factor = &factor * r.radicand();
            } else {
                out.push(r);
            }
        }
        (RadicalMonomial(out), factor)
    }

    /// Product of two monomials: the symmetric difference of the radical
    /// sets, times the radicand of every radical present in both.
    fn mul(&self, rhs: &Self) -> (Self, RatFuncQ) {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut factor = RatFuncQ::one();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factor = &factor * a[i].radicand();
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        (RadicalMonomial(out), factor)
    }

    /// Product of the radicands.
    pub fn radicand_product(&self) -> RatFuncQ {
        self.0
            .iter()
            .fold(RatFuncQ::one(), |acc, r| &acc * r.radicand())
    }
}

/// An element of Q(q) extended by formal square roots: a finite sum of
/// radical monomials with rational-function coefficients.
///
/// Equality is structural. Distinct radicands are never related to each
/// other, so `sqrt(a) * sqrt(b)` stays a two-radical monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<RadicalMonomial, RatFuncQ>,
}

impl Scalar {
    pub fn from_ratfunc(c: RatFuncQ) -> Self {
        Self::from_term(RadicalMonomial::one(), c)
    }

    pub fn from_term(mono: RadicalMonomial, coeff: RatFuncQ) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Scalar { terms }
    }

    /// `sqrt(w)` as a formal radical; `sqrt(0) = 0` and `sqrt(1) = 1`.
    pub fn sqrt(w: &RatFuncQ) -> Self {
        if w.is_zero() || w.is_one() {
            return Self::from_ratfunc(w.clone());
        }
        Self::from_term(
            RadicalMonomial(vec![Radical(Arc::new(w.clone()))]),
            RatFuncQ::one(),
        )
    }

    /// `w^(3/2) = w * sqrt(w)`.
    pub fn pow_three_halves(w: &RatFuncQ) -> Self {
        Self::sqrt(w).scale(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadicalMonomial, &RatFuncQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational function, if no radical survives.
    pub fn as_ratfunc(&self) -> Option<RatFuncQ> {
        match self.terms.len() {
            0 => Some(RatFuncQ::zero()),
            1 => self.terms.get(&RadicalMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Inverse of a single-term scalar `c * sqrt(r1)...sqrt(rk)`, which is
    /// `sqrt(r1)...sqrt(rk) / (c * r1 ... rk)`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        match self.terms.len() {
            0 => Err(ExactError::DivisionByZero),
            1 => {
                let (mono, coeff) = self.terms.iter().next().expect("one term");
                let denom = coeff * &mono.radicand_product();
                Ok(Self::from_term(mono.clone(), denom.inv()?))
            }
            _ => Err(ExactError::NotInvertible(self.to_string())),
        }
    }

    /// Every radical appearing in any term.
    pub fn radicals(&self) -> impl Iterator<Item = &Radical> {
        self.terms.keys().flat_map(|m| m.radicals().iter())
    }

    fn insert_add(&mut self, mono: RadicalMonomial, coeff: RatFuncQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// LaTeX rendering with radicals left unevaluated.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (mono, coeff) in &self.terms {
            let mut c = coeff.to_latex();
            let neg = c.starts_with('-');
            if neg {
                c.remove(0);
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let rads: String = mono
                .radicals()
                .iter()
                .map(|r| format!("\\sqrt{{{}}}", r.radicand().to_latex()))
                .collect();
            if rads.is_empty() {
                out.push_str(&c);
            } else if c == "1" {
                out.push_str(&rads);
            } else if c.contains(['+', '-']) {
                out.push_str(&format!("\\left({c}\\right){rads}"));
            } else {
                out.push_str(&c);
                out.push_str(&rads);
            }
        }
        out
    }
}

impl From<RatFuncQ> for Scalar {
    fn from(c: RatFuncQ) -> Self {
        Scalar::from_ratfunc(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_ratfunc(RatFuncQ::from_int(n))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_ratfunc(RatFuncQ::one())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            acc.insert_add(m.clone(), c.clone());
        }
        acc
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (mono, factor) = ma.mul(mb);
                out.insert_add(mono, &(ca * cb) * &factor);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let rads: Vec<String> = mono
                    .radicals()
                    .iter()
                    .map(|r| format!("sqrt({})", r.radicand()))
                    .collect();
                match (rads.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => rads.join("*"),
                    (false, false) => format!("({c})*{}", rads.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Registry of radicands with dense integer ids, used to serialize scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicandTable {
    entries: Vec<RatFuncQ>,
    index: BTreeMap<RatFuncQ, usize>,
}

impl RadicandTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of `w`, registering it on first sight.
    pub fn intern(&mut self, w: &RatFuncQ) -> usize {
        if let Some(&id) = self.index.get(w) {
            return id;
        }
        let id = self.entries.len();
        self.entries.push(w.clone());
        self.index.insert(w.clone(), id);
        id
    }

    pub fn id_of(&self, w: &RatFuncQ) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn get(&self, id: usize) -> Option<&RatFuncQ> {
        self.entries.get(id)
    }

    pub fn entries(&self) -> &[RatFuncQ] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rebuild from a serialized entry list. Entries must be distinct and
    /// must not be 0 or 1.
    pub fn from_entries(entries: Vec<RatFuncQ>) -> Result<Self, ExactError> {
        let mut table = RadicandTable::new();
        for w in entries {
            if w.is_zero() || w.is_one() || table.id_of(&w).is_some() {
                return Err(ExactError::Parse(format!("invalid radicand entry {w}")));
            }
            table.intern(&w);
        }
        Ok(table)
    }

    /// The radical with the given id as a scalar.
    pub fn radical(&self, id: usize) -> Option<Radical> {
        self.get(id).map(|w| Radical(Arc::new(w.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFuncQ {
        RatFuncQ::q()
    }

    #[test]
    fn radical_squares_to_radicand() {
        let w = -RatFuncQ::q_pow(-2);
        let s = Scalar::sqrt(&w);
        assert_eq!(s.square(), Scalar::from(w));
    }

    #[test]
    fn distinct_radicals_stay_formal() {
        let a = Scalar::sqrt(&(&q() + &RatFuncQ::one()));
        let b = Scalar::sqrt(&q());
        let p = &a * &b;
        assert_eq!(p.num_terms(), 1);
        let (mono, c) = p.terms().next().unwrap();
        assert_eq!(mono.radicals().len(), 2);
        assert!(c.is_one());
    }

    #[test]
    fn coefficient_scaling() {
        let w = &q() + &RatFuncQ::from_int(3);
        let s = &Scalar::sqrt(&w).scale(&RatFuncQ::from_int(2)) * &Scalar::from(3);
        assert_eq!(s, Scalar::sqrt(&w).scale(&RatFuncQ::from_int(6)));
    }

    #[test]
    fn trivial_radicands_fold() {
        assert!(Scalar::sqrt(&RatFuncQ::zero()).is_zero());
        assert!(Scalar::sqrt(&RatFuncQ::one()).is_one());
    }

    #[test]
    fn monomial_inverse() {
        let w = &q() + &RatFuncQ::one();
        let s = Scalar::sqrt(&w).scale(&q());
        assert!((&s * &s.inv().unwrap()).is_one());
        let two_terms = &Scalar::sqrt(&w) + &Scalar::one();
        assert!(two_terms.inv().is_err());
    }

    #[test]
    fn table_interning() {
        let mut t = RadicandTable::new();
        let a = t.intern(&q());
        let b = t.intern(&(&q() + &RatFuncQ::one()));
        assert_eq!((a, b), (0, 1));
        assert_eq!(t.intern(&q()), 0);
        assert!(RadicandTable::from_entries(vec![q(), q()]).is_err());
    }
}
