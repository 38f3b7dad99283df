//! Exact and truncated enumeration against independently derived counts.

use mldistill::grid::build_grid_code;
use mldistill::models::{e1_poly, e2_poly};
use mldistill::oracle::{conditional_error, enumerate_exact, enumerate_truncated};

/// Accepted configurations with one input error and two ancilla errors
/// that flip a given output of `H_{k+4}`: the matched single-site pair,
/// the `(k-1)(k-2)` cross-output pairs on index qubits, and the
/// `2(k^2-1)` preamble/index combinations.
fn one_level_cross_count(k: u64) -> u64 {
    (k + 4) + (k - 1) * (k - 2) + 2 * (k * k - 1)
}

#[test]
fn one_level_counts_k2_k4_k6() {
    for k in [2u64, 4, 6] {
        let g = build_grid_code(&[k as usize + 4]).unwrap();
        let r = enumerate_exact(&g).unwrap();
        assert!(r.marginals_symmetric());
        let m = &r.marginal[0];
        let model = e1_poly(k).unwrap();
        assert_eq!(m.count(2, 0) as f64, model.coeff(2, 0), "k = {k}");
        assert_eq!(m.count(0, 2) as f64, model.coeff(0, 2), "k = {k}");
        assert_eq!(m.count(1, 2), one_level_cross_count(k), "k = {k}");
        assert_eq!(m.count(0, 3), 8 * k, "k = {k}");
        if k >= 4 {
            assert_eq!(m.count(4, 0) as f64, model.coeff(4, 0), "k = {k}");
        }
    }
}

#[test]
fn two_level_8x8_matches_closed_form() {
    let g = build_grid_code(&[8, 8]).unwrap();
    let r = enumerate_truncated(&g, 4).unwrap();
    let model = e2_poly(4).unwrap();
    let m = &r.marginal[0];
    for (i, j) in [(2, 0), (1, 2), (0, 4)] {
        assert_eq!(m.count(i, j) as f64, model.coeff(i, j), "({i},{j})");
    }
    // nothing of total weight 3 escapes distance 4
    for (i, j) in [(0, 2), (0, 3), (1, 1), (2, 1), (3, 0)] {
        assert_eq!(m.count(i, j), 0, "({i},{j})");
    }
}

#[test]
fn two_level_6x6_preamble_index_degeneracy() {
    let g = build_grid_code(&[6, 6]).unwrap();
    let r = enumerate_truncated(&g, 4).unwrap();
    let m = &r.marginal[0];
    assert_eq!(m.count(2, 0), 3);
    assert_eq!(m.count(1, 2), 36);
    // three level-2 pair patterns, three weight-2 level-1 patterns in each
    // of the two blocks, eight ways to split each site pair over two gates
    assert_eq!(m.count(0, 4), 3 * 3 * 3 * 8);
}

#[test]
fn h6_conditional_error_near_seven_eps_squared() {
    let g = build_grid_code(&[6]).unwrap();
    let r = enumerate_exact(&g).unwrap();
    let eps: f64 = 1e-3;
    let c = conditional_error(&r, eps, eps).unwrap();
    assert!((c / (7.0 * eps * eps) - 1.0).abs() < 0.05, "{c}");
}
