//! Reference constructions shared by the oracle and acceptance targets.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::poly::Polynomial;
use xxx_wronskian::tq::{boundary_functions, dual_tq_defect, tq_defect};

pub type M = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> M {
    M::identity(n, n)
}

/// Swap of tensor factors `a` and `b` (0 = leftmost) among `n` qubits,
/// built from products of two-site swaps `(I ⊗ P ⊗ I)`.
pub fn factor_swap(a: usize, b: usize, n: usize) -> M {
    let p4 = M::from_fn(4, 4, |r, col| {
        let swapped = [0, 2, 1, 3];
        c(f64::from(u8::from(swapped[col] == r)), 0.0)
    });
    let adjacent = |k: usize| {
        identity(1 << k)
            .kronecker(&p4)
            .kronecker(&identity(1 << (n - k - 2)))
    };
    let (lo, hi) = (a.min(b), a.max(b));
    // bubble factor lo up to hi, then bubble the old hi back down to lo
    let mut s = identity(1 << n);
    for k in lo..hi {
        s = adjacent(k) * s;
    }
    for k in (lo..hi - 1).rev() {
        s = adjacent(k) * s;
    }
    s
}

/// Transfer matrix from full Kronecker products and an explicit partial trace.
pub fn kron_transfer(u: C64, p: &ModelParams) -> M {
    let n = p.n_sites;
    let big = 1 << (n + 1);
    let r0 = |j: usize| identity(big) * (u - c(0., 0.5)) + factor_swap(0, j, n + 1) * c(0., 1.);
    let (a, b, xi) = (p.alpha, p.beta, p.xi);
    let kr = M::from_row_slice(
        2,
        2,
        &[c(0., a - 0.5) + u, c(0., 0.), c(0., 0.), c(0., a + 0.5) - u],
    );
    let off = -(u + c(0., 0.5)) * xi;
    let kl = M::from_row_slice(2, 2, &[c(0., b - 0.5) - u, off, off, c(0., b + 0.5) + u]);
    let mut mono = identity(big);
    for j in 1..=n {
        mono *= r0(j);
    }
    let mut mono_hat = identity(big);
    for j in (1..=n).rev() {
        mono_hat *= r0(j);
    }
    let embed = |k: &M| k.kronecker(&identity(1 << n));
    let full = embed(&kl) * mono * embed(&kr) * mono_hat;
    let d = 1 << n;
    M::from_fn(d, d, |i, j| full[(i, j)] + full[(i + d, j + d)])
}

/// Q from matching every coefficient of the TQ defect, with no node
/// evaluation: the defect is affine in the free coefficients.
pub fn coefficient_matching_q(t: &Polynomial, p: &ModelParams, dual: bool) -> Polynomial {
    let n = p.n_sites;
    let bf = boundary_functions(p);
    let defect = |q: &Polynomial| {
        if dual {
            dual_tq_defect(t, q, &bf, n)
        } else {
            tq_defect(t, q, &bf, n)
        }
    };
    let lead = Polynomial::monomial(c(1., 0.), 2 * n);
    let base = defect(&lead);
    let rows = 4 * n + 4;
    let mut a = M::zeros(rows, n);
    for m in 0..n {
        let col = &defect(&(&lead + &Polynomial::monomial(c(1., 0.), 2 * m))) - &base;
        for r in 0..rows {
            a[(r, m)] = col.coeff(r);
        }
    }
    let rhs = DVector::from_fn(rows, |r, _| -base.coeff(r));
    let sol = a.svd(true, true).solve(&rhs, 1e-14).unwrap();
    let mut coeffs = vec![c(0., 0.); 2 * n + 1];
    coeffs[2 * n] = c(1., 0.);
    for m in 0..n {
        coeffs[2 * m] = sol[m];
    }
    Polynomial::new(coeffs)
}

/// Both eigenvalues of a 2x2 matrix by the quadratic formula.
pub fn quadratic_eigenvalues(t: &M) -> [C64; 2] {
    let tr = t[(0, 0)] + t[(1, 1)];
    let det = t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)];
    let disc = (tr * tr - 4.0 * det).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

/// Relative distance between two 2-element multisets.
pub fn pair_distance(a: [C64; 2], b: [C64; 2]) -> f64 {
    let scale = a[0].norm().max(a[1].norm());
    let direct = (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
    let crossed = (a[0] - b[1]).norm().max((a[1] - b[0]).norm());
    direct.min(crossed) / scale
}
