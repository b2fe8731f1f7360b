//! Independent reference constructions checked against the library.

mod common;

use num_complex::Complex64 as C64;

use common::{
    c, coefficient_matching_q, factor_swap, identity, kron_transfer, pair_distance,
    quadratic_eigenvalues,
};
use xxx_wronskian::chain::{self, max_abs, ModelParams};
use xxx_wronskian::poly::{circle_nodes, Polynomial};
use xxx_wronskian::spectrum::compute_spectrum;
use xxx_wronskian::tq::{boundary_functions, extract_roots, solve_p, solve_q, tq_defect};

#[test]
fn transfer_matrix_matches_kronecker_oracle() {
    let cases = [
        (1, 0.7, 1.3, 0.75, c(0.41, 0.0)),
        (1, -1.2, 0.4, -2.0, c(0.3, 0.8)),
        (3, 0.7, 1.3, 0.75, c(1.13, -0.2)),
        (3, -0.5, 2.0, 1.5, c(0.0, 0.9)),
    ];
    for (n, a, b, xi, u) in cases {
        let p = ModelParams::new(n, a, b, xi).unwrap();
        let lib = chain::transfer_matrix(u, &p);
        let oracle = kron_transfer(u, &p);
        let defect = max_abs(&(&lib - &oracle)) / max_abs(&oracle);
        assert!(defect < 1e-12, "N={n} u={u}: {defect:e}");
    }
}

#[test]
fn monodromy_matches_kronecker_ordering() {
    let p = ModelParams::new(3, 0.9, -0.6, 0.3).unwrap();
    let u = c(0.37, 0.21);
    let r0 = |j: usize| identity(16) * (u - c(0., 0.5)) + factor_swap(0, j, 4) * c(0., 1.);
    let mono = r0(1) * r0(2) * r0(3);
    let mono_hat = r0(3) * r0(2) * r0(1);
    let (m, m_hat) = chain::monodromy(u, &p);
    assert!(max_abs(&(&m - &mono)) < 1e-12 * max_abs(&mono));
    assert!(max_abs(&(&m_hat - &mono_hat)) < 1e-12 * max_abs(&mono_hat));
}

#[test]
fn single_site_eigenvalues_match_quadratic_formula() {
    for (a, b, xi) in [(0.7, 1.3, 0.75), (-1.1, 0.45, -1.4), (1.9, -0.8, 0.2)] {
        let p = ModelParams::new(1, a, b, xi).unwrap();
        let spec = compute_spectrum(&p).unwrap();
        for u in circle_nodes(1.5, 5)
            .into_iter()
            .chain([c(0.37, 0.0), c(2.2, 0.4)])
        {
            let roots = quadratic_eigenvalues(&chain::transfer_matrix(u, &p));
            let vals: Vec<C64> = spec.t_polys.iter().map(|q| q.eval(u)).collect();
            let d = pair_distance(roots, [vals[0], vals[1]]);
            assert!(d < 1e-10, "u={u}: {d:e}");
        }
    }
}

#[test]
fn least_squares_q_matches_coefficient_matching_oracle() {
    for (n, a, b, xi) in [
        (1, 0.7, 1.3, 0.75),
        (1, -0.9, 1.6, -1.2),
        (2, 0.7, 1.3, 0.75),
        (3, 1.1, -0.5, 0.4),
    ] {
        let p = ModelParams::new(n, a, b, xi).unwrap();
        let bf = boundary_functions(&p);
        let spec = compute_spectrum(&p).unwrap();
        for t in &spec.t_polys {
            let (q, _) = solve_q(t, &bf, n).unwrap();
            let oracle = coefficient_matching_q(t, &p, false);
            let rel = (&q - &oracle).max_abs() / oracle.max_abs();
            assert!(rel < 1e-9, "N={n} Q: {rel:e}");
            let (pp, _) = solve_p(t, &bf, n).unwrap();
            let oracle = coefficient_matching_q(t, &p, true);
            let rel = (&pp - &oracle).max_abs() / oracle.max_abs();
            assert!(rel < 1e-9, "N={n} P: {rel:e}");
        }
    }
}

#[test]
fn diagonal_single_site_closed_form() {
    // xi = 0, N = 1: T(u) is diagonal; one basis state is the reference state
    // with Q = 1, the other carries a single root pair
    let p = ModelParams::new(1, 0.8, 1.7, 0.0).unwrap();
    let bf = boundary_functions(&p);
    let mut degrees = Vec::new();
    for k in 0..2 {
        let entry = |u: C64| chain::transfer_matrix(u, &p)[(k, k)];
        let pts: Vec<(C64, C64)> = circle_nodes(1.5, 5)
            .into_iter()
            .map(|u| (u, entry(u)))
            .collect();
        let t = Polynomial::interpolate(&pts).unwrap();
        let (q, residual) = solve_q(&t, &bf, 1).unwrap();
        assert!(residual < 1e-12);
        assert!(tq_defect(&t, &q, &bf, 1).max_abs() < 1e-12 * t.max_abs() * q.max_abs());
        if q.degree() == Some(0) {
            assert_eq!(q, Polynomial::one());
        }
        degrees.push(q.degree().unwrap());
    }
    degrees.sort();
    assert_eq!(degrees, vec![0, 2]);
}

#[test]
fn planted_roots_are_recovered() {
    let planted = [
        c(0.4, 0.1),
        c(1.3, -0.6),
        c(2.1, 0.9),
        c(-0.7, 1.8),
        c(0.2, -1.1),
        c(-1.5, -0.4),
    ];
    let p = Polynomial::from_roots(c(1., 0.), &planted);
    let mut found = p.roots().unwrap();
    for r in planted {
        let (k, d) = found
            .iter()
            .enumerate()
            .map(|(k, z)| (k, (z - r).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!(d < 1e-8, "{r}: {d:e}");
        found.swap_remove(k);
    }

    let pairs = [c(0.6, 0.2), c(1.4, -0.3), c(0.0, 0.9)];
    let mut expanded = Polynomial::one();
    for &r in &pairs {
        expanded = &expanded * &Polynomial::from_roots(c(1., 0.), &[r, -r]);
    }
    let got = extract_roots(&expanded).unwrap();
    let mut want = pairs.to_vec();
    want.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).norm() < 1e-8, "{g} vs {w}");
    }
}
