//! Independent reference computations shared by the integration targets.
//! Nothing here goes through the relation engine or the weight solver.

#![allow(dead_code)]

use num_traits::{One, Zero};
use wosp::{Field, RatFuncQ, RatQ};

pub fn rq(n: i64, d: i64) -> RatQ {
    RatQ::new(n.into(), d.into())
}

/// Gauss-Jordan elimination; `None` when the system is singular or
/// inconsistent.
pub fn solve<T: Field>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for k in 0..n {
            a[col][k] = a[col][k].clone() / p.clone();
        }
        b[col] = b[col].clone() / p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..n {
                    a[r][k] = a[r][k].clone() - f.clone() * a[col][k].clone();
                }
                b[r] = b[r].clone() - f * b[col].clone();
            }
        }
    }
    Some(b)
}

/// Unknowns `h_0..h_{n-1}, w_0..w_{n-2}` of an `n`-dimensional
/// representation with `V+` on the superdiagonal:
/// `h_k - q h_{k+1} = 1` and `w_{k-1} + q w_k = h_k`, `w_{-1} = w_{n-1} = 0`.
/// Returns `(h, w)`.
pub fn brute_force_weights<T: Field>(n: usize, q: T) -> Option<(Vec<T>, Vec<T>)> {
    let unknowns = 2 * n - 1;
    let w = |k: usize| n + k;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in 0..n - 1 {
        let mut row = vec![T::zero(); unknowns];
        row[k] = T::one();
        row[k + 1] = -q.clone();
        a.push(row);
        b.push(T::one());
    }
    for k in 0..n {
        let mut row = vec![T::zero(); unknowns];
        row[k] = -T::one();
        if k > 0 {
            row[w(k - 1)] = T::one();
        }
        if k < n - 1 {
            row[w(k)] = q.clone();
        }
        a.push(row);
        b.push(T::zero());
    }
    // 2n - 1 equations in 2n - 1 unknowns
    let x = solve(a, b)?;
    Some((x[..n].to_vec(), x[n..].to_vec()))
}

pub fn q_int<T: Field>(n: usize, q: &T) -> T {
    let mut acc = T::zero();
    let mut p = T::one();
    for _ in 0..n {
        acc = acc + p.clone();
        p = p * q.clone();
    }
    acc
}

/// Fock ladder squares at a point, straight from the two relations.
pub fn fock_phi_at(m0: &RatQ, q: &RatQ, levels: usize) -> Vec<RatQ> {
    let mut m = m0.clone();
    let mut phi = vec![RatQ::zero()];
    for _ in 0..levels {
        let next = m.clone() - q * phi.last().unwrap();
        phi.push(next);
        m = q * &m + RatQ::one();
    }
    phi
}

pub fn ratfunc_at(r: &RatFuncQ, x: &RatQ) -> RatQ {
    r.eval_ratq(x).expect("no pole")
}
