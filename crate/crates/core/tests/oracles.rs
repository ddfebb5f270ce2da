mod common;

use common::*;
use num_traits::{One, Zero};
use wosp::algebra::{check_relations, relation_catalog, CatalogKind};
use wosp::exact::q_number;
use wosp::fock::{casimir_spectrum_fock, ladder_squares};
use wosp::matrix_rep::{build_generators, casimir_diagonal, closed_form_h, closed_form_w, solve_weights};
use wosp::{eval_numeric, QPoint, RatFuncQ, RatQ};

#[test]
fn weights_match_symbolic_linear_solve() {
    for n in [1, 3, 5, 7, 9] {
        let (h, w) = brute_force_weights(n, RatFuncQ::q()).expect("odd dims solvable");
        let s = solve_weights(n).unwrap();
        assert_eq!(s.h, h, "dim {n}");
        assert_eq!(s.w, w, "dim {n}");
        for k in 0..n {
            assert_eq!(closed_form_h(n, k), h[k]);
        }
        for k in 0..n - 1 {
            assert_eq!(closed_form_w(n, k), w[k]);
        }
    }
}

#[test]
fn even_dims_singular_symbolically() {
    for n in [2, 4, 6, 8] {
        assert!(brute_force_weights(n, RatFuncQ::q()).is_none(), "dim {n}");
    }
}

#[test]
fn weights_match_pointwise_solve() {
    for q0 in [rq(5, 3), rq(-7, 2), rq(11, 13)] {
        for n in (1..=15).step_by(2) {
            let (h, w) = brute_force_weights(n, q0.clone()).unwrap();
            let s = solve_weights(n).unwrap();
            let hs: Vec<RatQ> = s.h.iter().map(|x| ratfunc_at(x, &q0)).collect();
            let ws: Vec<RatQ> = s.w.iter().map(|x| ratfunc_at(x, &q0)).collect();
            assert_eq!(hs, h);
            assert_eq!(ws, w);
        }
    }
}

#[test]
fn dim3_casimir_at_one_from_scratch() {
    // q = 1: h = (1, 0, -1), w = (1, -1)
    let (h, w) = brute_force_weights(3, RatQ::one()).unwrap();
    assert_eq!(h, vec![rq(1, 1), rq(0, 1), rq(-1, 1)]);
    // (V+ V-)_kk = w_k, zero on the last row
    let vv = [w[0].clone(), w[1].clone(), RatQ::zero()];
    let c: Vec<RatQ> = (0..3)
        .map(|k| vv[k].clone() - (h[k].clone() - rq(1, 2)) / rq(2, 1))
        .collect();
    assert_eq!(c, vec![rq(3, 4), rq(-3, 4), rq(3, 4)]);
    let g = build_generators(3).unwrap();
    let exact = casimir_diagonal(&g).unwrap();
    let at_one: Vec<RatQ> = exact
        .entries
        .iter()
        .map(|s| ratfunc_at(&s.as_ratfunc().unwrap(), &RatQ::one()))
        .collect();
    assert_eq!(at_one, c);
}

#[test]
fn fock_ladders_match_pointwise() {
    let m0s = [RatFuncQ::zero(), -RatFuncQ::one(), &RatFuncQ::one() / &q_number(2), RatFuncQ::q()];
    for q0 in [rq(2, 1), rq(3, 7), rq(-5, 4)] {
        for m0 in &m0s {
            let phi = ladder_squares(m0, 20);
            let oracle = fock_phi_at(&ratfunc_at(m0, &q0), &q0, 20);
            let got: Vec<RatQ> = phi.iter().map(|x| ratfunc_at(x, &q0)).collect();
            assert_eq!(got, oracle);
        }
    }
}

#[test]
fn fock_casimir_pointwise() {
    let q0 = rq(2, 1);
    let c = casimir_spectrum_fock(&-RatFuncQ::one(), 3);
    let phi = fock_phi_at(&rq(-1, 1), &q0, 3);
    // m_n = -1 for every n at q = 2
    let oracle: Vec<RatQ> = phi[..3]
        .iter()
        .map(|p| p.clone() - (rq(-1, 1) - rq(1, 3)) / rq(4, 1))
        .collect();
    let got: Vec<RatQ> = c.values.iter().map(|x| ratfunc_at(x, &q0)).collect();
    assert_eq!(got, oracle);
}

#[test]
fn q_integers_agree() {
    for q0 in [rq(2, 1), rq(-2, 3)] {
        for n in 0..30 {
            assert_eq!(ratfunc_at(&q_number(n as i64), &q0), q_int(n, &q0));
        }
    }
}

#[test]
fn dim3_numeric_entries() {
    let g = build_generators(3).unwrap();
    let at = QPoint::Rational(rq(2, 1));
    let v = eval_numeric(g.vplus().get(1, 2), &at).unwrap();
    assert!((v.re).abs() < 1e-15 && (v.im - 0.5).abs() < 1e-15);
    let r = check_relations(&g.labeled(), &relation_catalog(&CatalogKind::Defining), Some(0), &[]).unwrap();
    assert!(r.all_zero());
}
