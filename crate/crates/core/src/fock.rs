//! Lowest-weight (Fock-type) representations built from the ladder
//! recurrences, their Casimir spectra, and a comparison against the
//! closed-form ladder coefficients `K^2 [n]`, `K^2 = (1 + (1-q) j)/(2q)`.
//!
//! Level `n` has `H`-eigenvalue `m_n` and `V+ V-` eigenvalue `phi_n`, with
//! `m_{n+1} = q m_n + 1`, `phi_0 = 0` and `phi_{n+1} + q phi_n = m_n`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraError, GenMatrix, GeneratorSet, Matrix, Source};
use crate::exact::json::{ratfunc_to_json, RatFuncJson};
use crate::exact::{q_number, Scalar};
use crate::RatFuncQ;

fn q() -> RatFuncQ {
    RatFuncQ::q()
}

fn inv_two_q() -> RatFuncQ {
    &RatFuncQ::one() / &(&RatFuncQ::from_int(2) * &q())
}

fn inv_one_plus_q() -> RatFuncQ {
    &RatFuncQ::one() / &q_number(2)
}

/// `(-q)^n`
fn neg_q_pow(n: usize) -> RatFuncQ {
    let p = RatFuncQ::q_pow(n as i64);
    if n.is_multiple_of(2) {
        p
    } else {
        -p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderData {
    pub m0: RatFuncQ,
    pub levels: usize,
    /// `m_0 .. m_{levels-1}`
    pub m: Vec<RatFuncQ>,
    /// `phi_0 .. phi_levels`
    pub phi: Vec<RatFuncQ>,
}

impl LadderData {
    pub fn new(m0: &RatFuncQ, levels: usize) -> Self {
        LadderData {
            m0: m0.clone(),
            levels,
            m: weight_sequence(m0, levels),
            phi: ladder_squares(m0, levels),
        }
    }
}

/// A basis state labeled either by `(c, m)` (Casimir value, weight) or by
/// `(j, n)` with `m = [n] - q^n j`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockStateLabel {
    pub c: RatFuncQ,
    pub m: RatFuncQ,
}

impl FockStateLabel {
    /// The `(j, n)` state of the closed-form representation. Its Casimir
    /// value `(j + 1/(1+q))/(2q)` does not depend on `n`.
    pub fn from_level(j: &RatFuncQ, n: usize) -> Self {
        let m = &q_number(n as i64) - &(&RatFuncQ::q_pow(n as i64) * j);
        let c = &(j + &inv_one_plus_q()) * &inv_two_q();
        FockStateLabel { c, m }
    }
}

/// `m_n = q^n m0 + [n]` for `n < levels`.
pub fn weight_sequence(m0: &RatFuncQ, levels: usize) -> Vec<RatFuncQ> {
    let mut out = Vec::with_capacity(levels);
    let mut m = m0.clone();
    for _ in 0..levels {
        out.push(m.clone());
        m = &(&q() * &m) + &RatFuncQ::one();
    }
    out
}

/// `phi_0 .. phi_levels` from `phi_0 = 0`, `phi_{n+1} = m_n - q phi_n`.
pub fn ladder_squares(m0: &RatFuncQ, levels: usize) -> Vec<RatFuncQ> {
    let m = weight_sequence(m0, levels);
    let mut phi = Vec::with_capacity(levels + 1);
    phi.push(RatFuncQ::zero());
    for mn in &m {
        let last = phi.last().expect("phi_0");
        let next = mn - &(&q() * last);
        phi.push(next);
    }
    phi
}

/// Closed form of the recurrence:
/// `phi_n = (m_n - 1/(1+q))/(2q) - (-q)^n (m0 - 1/(1+q))/(2q)`.
pub fn closed_form_phi(m0: &RatFuncQ, n: usize) -> RatFuncQ {
    let mn = &(&RatFuncQ::q_pow(n as i64) * m0) + &q_number(n as i64);
    let shift = inv_one_plus_q();
    let particular = &(&mn - &shift) * &inv_two_q();
    let homogeneous = &neg_q_pow(n) * &(&(m0 - &shift) * &inv_two_q());
    &particular - &homogeneous
}

/// `K^2 = (1 + (1-q) j) / (2q)`
pub fn ansatz_k_squared(j: &RatFuncQ) -> RatFuncQ {
    let one = RatFuncQ::one();
    &(&one + &(&(&one - &q()) * j)) * &inv_two_q()
}

/// The closed-form claim for `phi_n`: `K^2 [n]`.
pub fn ansatz_ladder_square(j: &RatFuncQ, n: usize) -> RatFuncQ {
    &ansatz_k_squared(j) * &q_number(n as i64)
}

/// The ladder coefficient `a(c, m) = sqrt((j + m)/(2q))`.
pub fn ansatz_ladder_coefficient(j: &RatFuncQ, m: &RatFuncQ) -> Scalar {
    Scalar::sqrt(&(&(j + m) * &inv_two_q()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzDiscrepancy {
    pub j: RatFuncQ,
    /// `Delta_n = K^2 [n] - phi_n` for `n = 0 ..= levels`.
    pub delta: Vec<RatFuncQ>,
    pub delta_zero: bool,
    pub first_nonzero_level: Option<usize>,
    /// `K^2 ([n+1] + q [n]) - m_n`: the anticommutator relation on the
    /// closed-form representation, per level `n < levels`.
    pub relation_residuals: Vec<RatFuncQ>,
    pub relation_residual_level0: RatFuncQ,
}

/// JSON view of [`AnsatzDiscrepancy`].
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyJson {
    pub j: RatFuncJson,
    pub delta_zero: bool,
    pub first_nonzero_level: Option<usize>,
    pub relation_residual_level0: RatFuncJson,
}

impl AnsatzDiscrepancy {
    pub fn to_json(&self) -> DiscrepancyJson {
        DiscrepancyJson {
            j: ratfunc_to_json(&self.j),
            delta_zero: self.delta_zero,
            first_nonzero_level: self.first_nonzero_level,
            relation_residual_level0: ratfunc_to_json(&self.relation_residual_level0),
        }
    }
}

/// Compare the closed-form coefficients against the recurrence
/// representation with lowest weight `m0 = -j`.
pub fn compare_ansatz(j: &RatFuncQ, levels: usize) -> AnsatzDiscrepancy {
    let m0 = -j;
    let phi = ladder_squares(&m0, levels);
    let delta: Vec<RatFuncQ> = phi
        .iter()
        .enumerate()
        .map(|(n, p)| &ansatz_ladder_square(j, n) - p)
        .collect();
    let first_nonzero_level = delta.iter().position(|d| !d.is_zero());
    let k2 = ansatz_k_squared(j);
    let m = weight_sequence(&m0, levels);
    let relation_residuals: Vec<RatFuncQ> = m
        .iter()
        .enumerate()
        .map(|(n, mn)| {
            let lhs = &q_number(n as i64 + 1) + &(&q() * &q_number(n as i64));
            &(&k2 * &lhs) - mn
        })
        .collect();
    let relation_residual_level0 = &k2 - &m0;
    AnsatzDiscrepancy {
        j: j.clone(),
        delta_zero: first_nonzero_level.is_none(),
        first_nonzero_level,
        delta,
        relation_residuals,
        relation_residual_level0,
    }
}

/// `levels x levels` generators: `H = diag(m)`, `V+` maps level `n` to
/// `n+1` with entry `sqrt(phi_{n+1})`, `V-` is its transpose placement.
pub fn build_truncated_generators(m0: &RatFuncQ, levels: usize) -> Result<GeneratorSet, AlgebraError> {
    let data = LadderData::new(m0, levels);
    let h = Matrix::from_diagonal(data.m.iter().cloned().map(Scalar::from).collect());
    let mut vplus = GenMatrix::zeros(levels);
    let mut vminus = GenMatrix::zeros(levels);
    for n in 0..levels.saturating_sub(1) {
        let v = Scalar::sqrt(&data.phi[n + 1]);
        vplus.set(n + 1, n, v.clone());
        vminus.set(n, n + 1, v);
    }
    GeneratorSet::from_parts(
        h,
        vplus,
        vminus,
        Source::FockTrunc {
            m0: m0.clone(),
            levels,
        },
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockCasimir {
    /// `c_n = phi_n - (m_n - 1/(1+q))/(2q)` for `n < levels`.
    pub values: Vec<RatFuncQ>,
    /// All values equal; happens exactly when `m0 = 1/(1+q)`.
    pub constant: bool,
}

pub fn casimir_spectrum_fock(m0: &RatFuncQ, levels: usize) -> FockCasimir {
    let data = LadderData::new(m0, levels);
    let shift = inv_one_plus_q();
    let values: Vec<RatFuncQ> = data
        .m
        .iter()
        .zip(&data.phi)
        .map(|(mn, pn)| pn - &(&(mn - &shift) * &inv_two_q()))
        .collect();
    let constant = values.windows(2).all(|w| w[0] == w[1]);
    FockCasimir { values, constant }
}

/// Geometric closed form `c_n = -(-q)^n (m0 - 1/(1+q)) / (2q)`.
pub fn closed_form_casimir(m0: &RatFuncQ, n: usize) -> RatFuncQ {
    -(&neg_q_pow(n) * &(&(m0 - &inv_one_plus_q()) * &inv_two_q()))
}
