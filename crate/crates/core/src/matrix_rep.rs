//! Finite matrix representations with diagonal `H` and `V+` (`V-`) on the
//! super (sub) diagonal.
//!
//! Indices are 0-based: entry `k` here is entry `k + 1` in the usual 1-based
//! statement of the recurrences, so `h[k] - q h[k+1] = 1` and
//! `w[k-1] + q w[k] = h[k]` with `w[-1] = w[dim-1] = 0`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{constant_diagonal, AlgebraError, GenMatrix, GeneratorSet, Matrix, Source};
use crate::exact::{q_number, Scalar};
use crate::RatFuncQ;

fn q() -> RatFuncQ {
    RatFuncQ::q()
}

fn one() -> RatFuncQ {
    RatFuncQ::one()
}

/// Even dimensions have no solution: the consistency condition collapses to
/// `0 = obstruction` with a nonzero right-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no matrix representation in even dimension {dim}: the consistency condition reduces to 0 = {obstruction}; the dimension must be odd")]
pub struct DimParityError {
    pub dim: usize,
    pub obstruction: RatFuncQ,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixRepError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Parity(#[from] DimParityError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Diagonal of `H` and squared ladder entries `w[k] = v[k]^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSolution {
    pub dim: usize,
    pub h: Vec<RatFuncQ>,
    pub w: Vec<RatFuncQ>,
    /// The last diagonal entry, fixed by the consistency condition.
    pub h_end: RatFuncQ,
}

/// `(-1/q)^k`
fn neg_q_inv_pow(k: i64) -> RatFuncQ {
    let p = RatFuncQ::q_pow(-k);
    if k.rem_euclid(2) == 0 {
        p
    } else {
        -p
    }
}

/// Right-hand side left over when the consistency condition is imposed in
/// dimension `dim`: `(q + (-1/q)^(dim-1)) / ((1-q)(1+q))`. It is what the
/// condition demands equal zero when `dim` is even.
pub fn parity_obstruction(dim: usize) -> RatFuncQ {
    let n = dim as i64;
    let num = &q() + &neg_q_inv_pow(n - 1);
    &num / &(&(&one() - &q()) * &q_number(2))
}

/// `h_dim = 1/(1-q) + (q + q^(1-dim)) / ((q-1)(q+1))`, valid for odd `dim`.
pub fn last_weight(dim: usize) -> RatFuncQ {
    let n = dim as i64;
    let first = &one() / &(&one() - &q());
    let second = &(&q() + &RatFuncQ::q_pow(1 - n)) / &(&(&q() - &one()) * &q_number(2));
    &first + &second
}

/// Closed form of `h[k]` (0-based) for odd `dim`:
/// `(1/(1-q)) (1 - q/(1+q) (q^dim + 1) q^-(k+1))`.
pub fn closed_form_h(dim: usize, k: usize) -> RatFuncQ {
    let n = dim as i64;
    let i = k as i64 + 1;
    let inner = &(&q() / &q_number(2)) * &(&(&RatFuncQ::q_pow(n) + &one()) * &RatFuncQ::q_pow(-i));
    &(&one() - &inner) / &(&one() - &q())
}

/// Closed form of `w[k] = v[k]^2` (0-based) for odd `dim`:
/// `(1/(1-q^2)) (1 - (-1/q)^i + ((-1)^i - 1)/2 (q^dim + 1) q^-i)`, `i = k+1`.
pub fn closed_form_w(dim: usize, k: usize) -> RatFuncQ {
    let n = dim as i64;
    let i = k as i64 + 1;
    let parity = if i % 2 == 0 { RatFuncQ::zero() } else { RatFuncQ::from_int(-1) };
    let bracket = &(&one() - &neg_q_inv_pow(i))
        + &(&parity * &(&(&RatFuncQ::q_pow(n) + &one()) * &RatFuncQ::q_pow(-i)));
    &bracket / &(&one() - &RatFuncQ::q_pow(2))
}

/// Alternating sum `sum_k (-1/q)^(n-1-k) h[k]`; zero exactly when the
/// ladder recursion closes with `w[dim-1] = 0`.
pub fn consistency_sum(h: &[RatFuncQ]) -> RatFuncQ {
    let n = h.len() as i64;
    h.iter().enumerate().fold(RatFuncQ::zero(), |acc, (k, hk)| {
        &acc + &(&neg_q_inv_pow(n - 1 - k as i64) * hk)
    })
}

/// Solve the weight and ladder recurrences in dimension `dim`.
pub fn solve_weights(dim: usize) -> Result<WeightSolution, MatrixRepError> {
    if dim == 0 {
        return Err(MatrixRepError::ZeroDimension);
    }
    if dim.is_multiple_of(2) {
        return Err(DimParityError {
            dim,
            obstruction: parity_obstruction(dim),
        }
        .into());
    }
    let h_end = last_weight(dim);
    // h[k] = q^(n-1-k) h_end + [n-1-k]
    let h: Vec<RatFuncQ> = (0..dim)
        .map(|k| {
            let e = (dim - 1 - k) as i64;
            &(&RatFuncQ::q_pow(e) * &h_end) + &q_number(e)
        })
        .collect();
    let q_inv = RatFuncQ::q_pow(-1);
    let mut w = Vec::with_capacity(dim - 1);
    let mut prev = RatFuncQ::zero();
    for hk in &h[..dim - 1] {
        let wk = &(hk - &prev) * &q_inv;
        prev = wk.clone();
        w.push(wk);
    }
    debug_assert_eq!(prev, h[dim - 1], "ladder recursion must close");
    Ok(WeightSolution { dim, h, w, h_end })
}

/// Generators on the `dim`-dimensional space. `V+` carries `sqrt(w[k])` at
/// `(k, k+1)`, `V-` the same radical at `(k+1, k)`: the transpose placement,
/// with no sign or conjugation chosen in the exact layer.
pub fn build_generators(dim: usize) -> Result<GeneratorSet, MatrixRepError> {
    let sol = solve_weights(dim)?;
    let h = Matrix::from_diagonal(sol.h.iter().cloned().map(Scalar::from).collect());
    let mut vplus = GenMatrix::zeros(dim);
    let mut vminus = GenMatrix::zeros(dim);
    for (k, wk) in sol.w.iter().enumerate() {
        let v = Scalar::sqrt(wk);
        vplus.set(k, k + 1, v.clone());
        vminus.set(k + 1, k, v);
    }
    Ok(GeneratorSet::from_parts(h, vplus, vminus, Source::MatrixRep { dim })?)
}

/// The published three-dimensional matrices, entered by hand. The entry
/// written `i q^-1` is the radical `sqrt(-q^-2)`.
pub fn reference_n3() -> GeneratorSet {
    let h = Matrix::from_diagonal(vec![
        Scalar::from(q()),
        Scalar::from(&one() - &RatFuncQ::q_pow(-1)),
        Scalar::from(-RatFuncQ::q_pow(-2)),
    ]);
    let i_over_q = Scalar::sqrt(&-RatFuncQ::q_pow(-2));
    let mut vplus = GenMatrix::zeros(3);
    vplus.set(0, 1, Scalar::one());
    vplus.set(1, 2, i_over_q.clone());
    let mut vminus = GenMatrix::zeros(3);
    vminus.set(1, 0, Scalar::one());
    vminus.set(2, 1, i_over_q);
    GeneratorSet::from_parts(h, vplus, vminus, Source::Reference).expect("3x3 blocks")
}

/// `C = V+ V- - (1/(2q)) (H - 1/(1+q))`.
pub fn casimir_matrix(gens: &GeneratorSet) -> Result<GenMatrix, AlgebraError> {
    let dim = gens.dim();
    let shift = Matrix::identity(dim).scale(&Scalar::from(&one() / &q_number(2)));
    let centered = gens.h().checked_sub(&shift)?;
    let half_inv_q = Scalar::from(&one() / &(&RatFuncQ::from_int(2) * &q()));
    gens.vplus()
        .checked_mul(gens.vminus())?
        .checked_sub(&centered.scale(&half_inv_q))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirDiagonal {
    pub entries: Vec<Scalar>,
    /// Whether `C` is diagonal with all entries equal.
    pub is_scalar: bool,
}

pub fn casimir_diagonal(gens: &GeneratorSet) -> Result<CasimirDiagonal, AlgebraError> {
    let c = casimir_matrix(gens)?;
    let entries = c.diagonal();
    let is_scalar = c.is_diagonal() && constant_diagonal(&entries);
    Ok(CasimirDiagonal { entries, is_scalar })
}
