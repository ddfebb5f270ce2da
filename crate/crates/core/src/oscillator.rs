//! The q-deformed oscillator `[a, a+]_q = 1`, its osp(1/2) realization,
//! and the Jackson derivative acting on truncated polynomial spaces.

use num_traits::{One, Zero};

use crate::algebra::{
    check_relations, default_q_samples, relation_catalog, AlgebraError, CatalogKind, Gen,
    GenMatrix, GeneratorSet, LabeledMatrices, Matrix, ResidualReport, Source,
};
use crate::exact::{q_number, Scalar};
use crate::RatFuncQ;

/// Truncated Fock-space oscillator on levels `0 .. levels`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorRep {
    pub levels: usize,
    pub a: GenMatrix,
    pub adag: GenMatrix,
    pub num: GenMatrix,
}

impl OscillatorRep {
    pub fn labeled(&self) -> LabeledMatrices {
        oscillator_labels(&self.a, &self.adag, &self.num)
    }
}

fn oscillator_labels(a: &GenMatrix, adag: &GenMatrix, num: &GenMatrix) -> LabeledMatrices {
    [(Gen::A, a), (Gen::ADag, adag), (Gen::Num, num)]
        .into_iter()
        .map(|(g, m)| (g, m.clone()))
        .collect()
}

/// `a|n> = sqrt([n]) |n-1>`, `a+|n> = sqrt([n+1]) |n+1>`, `N|n> = [n] |n>`.
pub fn build_oscillator(levels: usize) -> OscillatorRep {
    let mut a = GenMatrix::zeros(levels);
    let mut adag = GenMatrix::zeros(levels);
    for n in 1..levels {
        let root = Scalar::sqrt(&q_number(n as i64));
        a.set(n - 1, n, root.clone());
        adag.set(n, n - 1, root);
    }
    let num = Matrix::from_diagonal((0..levels).map(|n| Scalar::from(q_number(n as i64))).collect());
    OscillatorRep { levels, a, adag, num }
}

/// The oscillator catalog on `build_oscillator(levels)`; `margin` defaults
/// to each relation's word length.
pub fn verify_oscillator(levels: usize, margin: Option<usize>) -> Result<ResidualReport, AlgebraError> {
    let rep = build_oscillator(levels);
    check_relations(
        &rep.labeled(),
        &relation_catalog(&CatalogKind::Oscillator),
        margin,
        &default_q_samples(),
    )
}

/// `1/sqrt(1+q)`, stored as `sqrt(1+q)/(1+q)`.
fn inv_sqrt_two() -> Scalar {
    let two = q_number(2);
    Scalar::sqrt(&two).scale(&(&RatFuncQ::one() / &two))
}

/// `V- = a/sqrt(1+q)`, `V+ = a+/sqrt(1+q)`, `H = (a a+ + q a+ a)/(1+q)`.
///
/// `H` is formed from the truncated products, so its top entry carries the
/// truncation defect of `a a+`.
pub fn osp_realization(levels: usize) -> Result<GeneratorSet, AlgebraError> {
    let rep = build_oscillator(levels);
    let two = q_number(2);
    let s = inv_sqrt_two();
    let aad = rep.a.checked_mul(&rep.adag)?;
    let ada = rep.adag.checked_mul(&rep.a)?;
    let h = aad
        .checked_add(&ada.scale(&Scalar::from(RatFuncQ::q())))?
        .scale(&Scalar::from(&RatFuncQ::one() / &two));
    GeneratorSet::from_parts(
        h,
        rep.adag.scale(&s),
        rep.a.scale(&s),
        Source::Oscillator { levels },
    )
}

/// A polynomial in `x` of degree at most `d`, stored as `d + 1` ascending
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVec(Vec<RatFuncQ>);

impl PolyVec {
    pub fn zero(d: usize) -> Self {
        PolyVec(vec![RatFuncQ::zero(); d + 1])
    }

    /// `x^n` in degree-`d` space. Panics if `n > d`.
    pub fn monomial(n: usize, d: usize) -> Self {
        assert!(n <= d, "x^{n} exceeds degree {d}");
        let mut p = Self::zero(d);
        p.0[n] = RatFuncQ::one();
        p
    }

    pub fn from_coeffs(coeffs: Vec<RatFuncQ>) -> Self {
        assert!(!coeffs.is_empty(), "PolyVec needs at least one coefficient");
        PolyVec(coeffs)
    }

    pub fn degree_bound(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFuncQ] {
        &self.0
    }

    pub fn coeff(&self, n: usize) -> &RatFuncQ {
        &self.0[n]
    }
}

/// Jackson derivative `(f(qx) - f(x)) / (x (q - 1))`: `x^n -> [n] x^(n-1)`.
pub fn qderiv(p: &PolyVec) -> PolyVec {
    let d = p.degree_bound();
    let mut out = PolyVec::zero(d);
    for n in 1..=d {
        out.0[n - 1] = &q_number(n as i64) * p.coeff(n);
    }
    out
}

/// Multiplication by `x`; the degree-`d` coefficient falls off the top.
pub fn times_x(p: &PolyVec) -> PolyVec {
    let d = p.degree_bound();
    let mut out = PolyVec::zero(d);
    for n in 0..d {
        out.0[n + 1] = p.coeff(n).clone();
    }
    out
}

fn operator_matrix(d: usize, op: impl Fn(&PolyVec) -> PolyVec) -> GenMatrix {
    let mut m = GenMatrix::zeros(d + 1);
    for col in 0..=d {
        let image = op(&PolyVec::monomial(col, d));
        for (row, c) in image.coeffs().iter().enumerate() {
            if !c.is_zero() {
                m.set(row, col, Scalar::from(c.clone()));
            }
        }
    }
    m
}

/// Operators on the monomial basis `1, x, .., x^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateRealization {
    pub degree: usize,
    pub xhat: GenMatrix,
    pub dhat: GenMatrix,
    /// `x D`
    pub nhat: GenMatrix,
    /// `V+ = x/sqrt(1+q)`, `V- = D/sqrt(1+q)`, `H = (1 + 2q xD)/(1+q)`.
    pub osp: GeneratorSet,
}

impl CoordinateRealization {
    /// `a = D`, `a+ = x`, `N = x D`.
    pub fn oscillator_labels(&self) -> LabeledMatrices {
        oscillator_labels(&self.dhat, &self.xhat, &self.nhat)
    }

    pub fn osp_labels(&self) -> LabeledMatrices {
        self.osp.labeled()
    }
}

pub fn coordinate_realization(degree: usize) -> Result<CoordinateRealization, AlgebraError> {
    let xhat = operator_matrix(degree, times_x);
    let dhat = operator_matrix(degree, qderiv);
    let nhat = xhat.checked_mul(&dhat)?;
    let two = q_number(2);
    let s = inv_sqrt_two();
    let h = Matrix::identity(degree + 1)
        .checked_add(&nhat.scale(&Scalar::from(&RatFuncQ::from_int(2) * &RatFuncQ::q())))?
        .scale(&Scalar::from(&RatFuncQ::one() / &two));
    let osp = GeneratorSet::from_parts(
        h,
        xhat.scale(&s),
        dhat.scale(&s),
        Source::Coordinate { degree },
    )?;
    Ok(CoordinateRealization {
        degree,
        xhat,
        dhat,
        nhat,
        osp,
    })
}

/// `S = diag(sqrt([n]!))`, with `sqrt([n]!)` kept as `sqrt([2]) .. sqrt([n])`.
pub fn similarity_matrix(levels: usize) -> GenMatrix {
    let mut diag = Vec::with_capacity(levels);
    let mut acc = Scalar::one();
    for n in 0..levels {
        if n >= 2 {
            acc = &acc * &Scalar::sqrt(&q_number(n as i64));
        }
        diag.push(acc.clone());
    }
    Matrix::from_diagonal(diag)
}

fn diagonal_inverse(s: &GenMatrix) -> GenMatrix {
    Matrix::from_diagonal(
        s.diagonal()
            .iter()
            .map(|d| d.inv().expect("single-term diagonal"))
            .collect(),
    )
}

/// Result of conjugating the Fock ladder by `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityCheck {
    pub degree: usize,
    /// `S^-1 a S == D`
    pub lowering: bool,
    /// `S^-1 a+ S == x`
    pub raising: bool,
    /// `S^-1 N S == x D`
    pub number: bool,
}

impl SimilarityCheck {
    pub fn holds(&self) -> bool {
        self.lowering && self.raising && self.number
    }
}

/// The monomial and Fock pictures are related by `S^-1 (.) S`.
pub fn check_similarity(degree: usize) -> Result<SimilarityCheck, AlgebraError> {
    let levels = degree + 1;
    let osc = build_oscillator(levels);
    let coord = coordinate_realization(degree)?;
    let s = similarity_matrix(levels);
    let s_inv = diagonal_inverse(&s);
    let conj = |m: &GenMatrix| s_inv.checked_mul(m)?.checked_mul(&s);
    Ok(SimilarityCheck {
        degree,
        lowering: conj(&osc.a)? == coord.dhat,
        raising: conj(&osc.adag)? == coord.xhat,
        number: conj(&osc.num)? == coord.nhat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatQ;

    fn q() -> RatFuncQ {
        RatFuncQ::q()
    }

    #[test]
    fn small_oscillator() {
        let o = build_oscillator(3);
        let ada = o.adag.checked_mul(&o.a).unwrap();
        assert_eq!(ada, o.num);
        assert_eq!(
            o.num.diagonal(),
            vec![Scalar::zero(), Scalar::one(), Scalar::from(q_number(2))]
        );
        let aad = o.a.checked_mul(&o.adag).unwrap();
        assert_eq!(aad.get(0, 0), &Scalar::one());
        assert_eq!(aad.get(1, 1), &Scalar::from(q_number(2)));
        assert_eq!(build_oscillator(2).a.get(0, 1), &Scalar::one());
    }

    #[test]
    fn vacuum() {
        let o = build_oscillator(6);
        for i in 0..6 {
            assert!(o.a.get(i, 0).is_zero());
            assert!(o.num.get(i, 0).is_zero());
        }
    }

    #[test]
    fn oscillator_suite() {
        let r = verify_oscillator(8, None).unwrap();
        assert!(r.all_zero(), "{r:?}");
        let r = verify_oscillator(3, Some(0)).unwrap();
        let first = r.get("[a,a+]_q = 1").unwrap();
        assert!(!first.symbolic_zero);
        assert!(first.offending_entries.iter().all(|e| e[1] == 2));
    }

    #[test]
    fn osp_from_oscillator() {
        let g = osp_realization(8).unwrap();
        let two = q_number(2);
        for n in 0..7 {
            let expect = &(&RatFuncQ::one() + &(&(&RatFuncQ::from_int(2) * &q()) * &q_number(n))) / &two;
            assert_eq!(g.h().get(n as usize, n as usize), &Scalar::from(expect));
        }
        let mut cat = relation_catalog(&CatalogKind::Defining);
        cat.extend(relation_catalog(&CatalogKind::Derived));
        let r = check_relations(&g.labeled(), &cat, None, &default_q_samples()).unwrap();
        assert!(r.all_zero(), "{r:?}");
    }

    #[test]
    fn qderiv_examples() {
        assert_eq!(qderiv(&PolyVec::monomial(0, 3)), PolyVec::zero(3));
        let d = qderiv(&PolyVec::monomial(2, 3));
        assert_eq!(d.coeff(1), &q_number(2));
        let p = PolyVec::from_coeffs(vec![
            RatFuncQ::zero(),
            RatFuncQ::from_int(2),
            RatFuncQ::zero(),
            RatFuncQ::one(),
        ]);
        let d = qderiv(&p);
        assert_eq!(d.coeffs()[0], RatFuncQ::from_int(2));
        assert_eq!(d.coeffs()[2], q_number(3));
    }

    #[test]
    fn coordinate_matrices() {
        let c = coordinate_realization(6).unwrap();
        let expect: Vec<Scalar> = (0..7).map(|n| Scalar::from(q_number(n))).collect();
        assert_eq!(c.nhat.diagonal(), expect);
        let osc = osp_realization(7).unwrap();
        for n in 0..6 {
            assert_eq!(c.osp.h().get(n, n), osc.h().get(n, n));
        }
        let r = check_relations(
            &c.oscillator_labels(),
            &relation_catalog(&CatalogKind::Oscillator),
            Some(2),
            &default_q_samples(),
        )
        .unwrap();
        assert!(r.all_zero(), "{r:?}");
    }

    #[test]
    fn similarity() {
        for d in [2, 5, 9] {
            assert!(check_similarity(d).unwrap().holds());
        }
        let s = similarity_matrix(4);
        assert_eq!(s.get(3, 3).square(), Scalar::from(crate::exact::q_factorial(3)));
    }

    #[test]
    fn classical_limit() {
        for n in 1..10usize {
            let d = qderiv(&PolyVec::monomial(n, 10));
            assert_eq!(d.coeff(n - 1).classical_limit(), Some(RatQ::from_integer((n as i64).into())));
        }
    }
}
