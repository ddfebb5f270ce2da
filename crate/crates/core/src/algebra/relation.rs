use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{AlgebraError, GenMatrix, Matrix};
use crate::exact::{q_number, Scalar};
use crate::ring::Ring;
use crate::RatFuncQ;

/// Generator labels. The oscillator labels are shared by the Fock
/// oscillator and the coordinate (x, D) realization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Gen {
    H,
    VPlus,
    VMinus,
    JPlus,
    JMinus,
    A,
    ADag,
    Num,
}

impl Gen {
    pub const OSP: [Gen; 5] = [Gen::H, Gen::VPlus, Gen::VMinus, Gen::JPlus, Gen::JMinus];

    /// How many ladder steps the generator moves a basis vector. `J±` are
    /// quadratic in `V±`.
    pub fn reach(self) -> usize {
        match self {
            Gen::JPlus | Gen::JMinus => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::H => "H",
            Gen::VPlus => "V+",
            Gen::VMinus => "V-",
            Gen::JPlus => "J+",
            Gen::JMinus => "J-",
            Gen::A => "a",
            Gen::ADag => "a+",
            Gen::Num => "N",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generator word; the empty word is the identity.
pub type Word = Vec<Gen>;

/// Linear combination of words with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordPoly(BTreeMap<Word, RatFuncQ>);

impl WordPoly {
    pub fn zero() -> Self {
        WordPoly(BTreeMap::new())
    }

    pub fn identity() -> Self {
        Self::word(&[])
    }

    pub fn word(w: &[Gen]) -> Self {
        Self::term(RatFuncQ::one(), w)
    }

    pub fn gen(g: Gen) -> Self {
        Self::word(&[g])
    }

    pub fn term(c: RatFuncQ, w: &[Gen]) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(w.to_vec(), c);
        }
        WordPoly(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFuncQ)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(mut self, rhs: &WordPoly) -> Self {
        for (w, c) in &rhs.0 {
            let sum = self.0.get(w).map_or_else(|| c.clone(), |old| old + c);
            if sum.is_zero() {
                self.0.remove(w);
            } else {
                self.0.insert(w.clone(), sum);
            }
        }
        self
    }

    pub fn sub(self, rhs: &WordPoly) -> Self {
        self.add(&rhs.scale(&-RatFuncQ::one()))
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WordPoly(self.0.iter().map(|(w, k)| (w.clone(), k * c)).collect())
    }

    /// Concatenation product.
    pub fn mul(&self, rhs: &WordPoly) -> Self {
        let mut out = WordPoly::zero();
        for (wa, ca) in &self.0 {
            for (wb, cb) in &rhs.0 {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out = out.add(&WordPoly::term(ca * cb, &w));
            }
        }
        out
    }

    /// `A B ∓ p B A` for the bracket `spec`.
    pub fn bracket(a: &WordPoly, b: &WordPoly, spec: &BracketSpec) -> Self {
        let ba = b.mul(a).scale(&spec.deform);
        match spec.kind {
            BracketKind::Commutator => a.mul(b).sub(&ba),
            BracketKind::Anticommutator => a.mul(b).add(&ba),
        }
    }

    /// Largest total reach over all words.
    pub fn reach(&self) -> usize {
        self.0
            .keys()
            .map(|w| w.iter().map(|g| g.reach()).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.keys().flat_map(|w| w.iter().copied())
    }

    /// Evaluate on matrices, embedding the coefficients with `coeff`.
    pub fn evaluate<T: Ring, E>(
        &self,
        mats: &BTreeMap<Gen, Matrix<T>>,
        dim: usize,
        coeff: impl Fn(&RatFuncQ) -> Result<T, E>,
    ) -> Result<Matrix<T>, E>
    where
        E: From<AlgebraError>,
    {
        let mut acc = Matrix::zeros(dim);
        for (w, c) in &self.0 {
            let mut prod: Option<Matrix<T>> = None;
            for g in w {
                let m = mats.get(g).ok_or(AlgebraError::MissingLabel(*g))?;
                prod = Some(match prod {
                    None => m.clone(),
                    Some(p) => p.checked_mul(m)?,
                });
            }
            let prod = prod.unwrap_or_else(|| Matrix::identity(dim));
            acc = acc.checked_add(&prod.scale(&coeff(c)?))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|g| g.name()).collect::<Vec<_>>().join(" ")
                };
                if c.is_one() {
                    word
                } else {
                    format!("({c}) {word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketKind {
    /// `AB - pBA`
    Commutator,
    /// `AB + pBA`
    Anticommutator,
}

/// Deformed bracket `[A,B]_p = AB - pBA` or `{A,B}_p = AB + pBA`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BracketSpec {
    pub deform: RatFuncQ,
    pub kind: BracketKind,
}

impl BracketSpec {
    pub fn commutator(p: RatFuncQ) -> Self {
        BracketSpec {
            deform: p,
            kind: BracketKind::Commutator,
        }
    }

    pub fn anticommutator(p: RatFuncQ) -> Self {
        BracketSpec {
            deform: p,
            kind: BracketKind::Anticommutator,
        }
    }
}

/// `AB ∓ p BA` on exact matrices.
pub fn qbracket(a: &GenMatrix, b: &GenMatrix, spec: &BracketSpec) -> Result<GenMatrix, AlgebraError> {
    let ab = a.checked_mul(b)?;
    let ba = b.checked_mul(a)?.scale(&Scalar::from(spec.deform.clone()));
    match spec.kind {
        BracketKind::Commutator => ab.checked_sub(&ba),
        BracketKind::Anticommutator => ab.checked_add(&ba),
    }
}

/// A named identity `lhs = rhs` between word polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: WordPoly,
    pub rhs: WordPoly,
    /// Largest reach over both sides; the default truncation margin.
    pub word_length: usize,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: WordPoly, rhs: WordPoly) -> Self {
        let word_length = lhs.reach().max(rhs.reach()).max(1);
        Relation {
            name: name.into(),
            lhs,
            rhs,
            word_length,
        }
    }

    /// `lhs - rhs`
    pub fn difference(&self) -> WordPoly {
        self.lhs.clone().sub(&self.rhs)
    }
}

/// Which group of relations to produce.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CatalogKind {
    /// The five defining relations of the deformed algebra.
    Defining,
    /// The seven relations among the even generators that follow from them.
    Derived,
    /// The two-parameter bosonic template with symbolic `(r, s)`.
    BosonicTwoParam { r: RatFuncQ, s: RatFuncQ },
    /// The deformed oscillator relations and the two number-operator identities.
    Oscillator,
}

impl CatalogKind {
    /// The template at `(r, s) = (q^-1, q^-2)`, which is what the rescaled
    /// bosonic sector of the deformed algebra satisfies.
    pub fn bosonic_witten() -> Self {
        CatalogKind::BosonicTwoParam {
            r: RatFuncQ::q_pow(-1),
            s: RatFuncQ::q_pow(-2),
        }
    }

    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        match s {
            "defining" => Ok(CatalogKind::Defining),
            "derived" => Ok(CatalogKind::Derived),
            "bosonic-two-param" | "bosonic" => Ok(Self::bosonic_witten()),
            "oscillator" => Ok(CatalogKind::Oscillator),
            other => Err(AlgebraError::UnknownCatalog(other.to_string())),
        }
    }
}

fn q() -> RatFuncQ {
    RatFuncQ::q()
}

fn g(x: Gen) -> WordPoly {
    WordPoly::gen(x)
}

fn comm(a: Gen, b: Gen, p: RatFuncQ) -> WordPoly {
    WordPoly::bracket(&g(a), &g(b), &BracketSpec::commutator(p))
}

fn anti(a: Gen, b: Gen, p: RatFuncQ) -> WordPoly {
    WordPoly::bracket(&g(a), &g(b), &BracketSpec::anticommutator(p))
}

pub fn relation_catalog(kind: &CatalogKind) -> Vec<Relation> {
    use Gen::*;
    let two = q_number(2);
    match kind {
        CatalogKind::Defining => vec![
            Relation::new("{V-,V+}_q = H", anti(VMinus, VPlus, q()), g(H)),
            Relation::new("{V-,V-}_q = J-", anti(VMinus, VMinus, q()), g(JMinus)),
            Relation::new("{V+,V+}_q = J+", anti(VPlus, VPlus, q()), g(JPlus)),
            Relation::new("[H,V+]_q = V+", comm(H, VPlus, q()), g(VPlus)),
            Relation::new("[V-,H]_q = V-", comm(VMinus, H, q()), g(VMinus)),
        ],
        CatalogKind::Derived => {
            let q2 = RatFuncQ::q_pow(2);
            let q4 = RatFuncQ::q_pow(4);
            let one_minus_q = &RatFuncQ::one() - &q();
            let rhs_last = g(H)
                .scale(&q())
                .add(&WordPoly::term(one_minus_q, &[VMinus, VPlus]))
                .scale(&(&two * &two));
            vec![
                Relation::new("[J+,V+] = 0", comm(JPlus, VPlus, RatFuncQ::one()), WordPoly::zero()),
                Relation::new("[J-,V-] = 0", comm(JMinus, VMinus, RatFuncQ::one()), WordPoly::zero()),
                Relation::new("[V-,J+]_{q^2} = [2] V+", comm(VMinus, JPlus, q2.clone()), g(VPlus).scale(&two)),
                Relation::new("[J-,V+]_{q^2} = [2] V-", comm(JMinus, VPlus, q2.clone()), g(VMinus).scale(&two)),
                Relation::new("[H,J+]_{q^2} = [2] J+", comm(H, JPlus, q2.clone()), g(JPlus).scale(&two)),
                Relation::new("[J-,H]_{q^2} = [2] J-", comm(JMinus, H, q2), g(JMinus).scale(&two)),
                Relation::new("[J-,J+]_{q^4} = [2]^2 (q H + (1-q) V- V+)", comm(JMinus, JPlus, q4), rhs_last),
            ]
        }
        CatalogKind::BosonicTwoParam { r, s } => {
            let r_inv = r.inv().expect("r must be nonzero");
            let s_inv = s.inv().expect("s must be nonzero");
            let name = |form: &str| format!("{form}  [(r, s) = ({r}, {s})]");
            vec![
                Relation::new(
                    name("r H J+ - r^-1 J+ H = J+"),
                    WordPoly::term(r.clone(), &[H, JPlus]).sub(&WordPoly::term(r_inv.clone(), &[JPlus, H])),
                    g(JPlus),
                ),
                Relation::new(
                    name("r J- H - r^-1 H J- = J-"),
                    WordPoly::term(r.clone(), &[JMinus, H]).sub(&WordPoly::term(r_inv, &[H, JMinus])),
                    g(JMinus),
                ),
                Relation::new(
                    name("s^-1 J+ J- - s J- J+ = H"),
                    WordPoly::term(s_inv, &[JPlus, JMinus]).sub(&WordPoly::term(s.clone(), &[JMinus, JPlus])),
                    g(H),
                ),
            ]
        }
        CatalogKind::Oscillator => vec![
            Relation::new("[a,a+]_q = 1", comm(A, ADag, q()), WordPoly::identity()),
            Relation::new("[N,a+]_q = a+", comm(Num, ADag, q()), g(ADag)),
            Relation::new("[a,N]_q = a", comm(A, Num, q()), g(A)),
            Relation::new("a+ a = N", WordPoly::word(&[ADag, A]), g(Num)),
            Relation::new(
                "a a+ = 1 + q N",
                WordPoly::word(&[A, ADag]),
                WordPoly::identity().add(&g(Num).scale(&q())),
            ),
        ],
    }
}

/// The third bosonic identity with the fermion bilinear kept:
/// `q^2 J+ J- - q^-2 J- J+ = H + (1-q)/(1+q) V- V+` on the rescaled
/// generators. Dropping the last term gives the decoupled form.
pub fn fermion_coupled_bosonic_relation() -> Relation {
    use Gen::*;
    let one = RatFuncQ::one();
    let coeff = &(&one - &q()) / &(&one + &q());
    Relation::new(
        "q^2 J+ J- - q^-2 J- J+ = H + (1-q)/(1+q) V- V+",
        WordPoly::term(RatFuncQ::q_pow(2), &[JPlus, JMinus])
            .sub(&WordPoly::term(RatFuncQ::q_pow(-2), &[JMinus, JPlus])),
        g(H).add(&WordPoly::term(coeff, &[VMinus, VPlus])),
    )
}
