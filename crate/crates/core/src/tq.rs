//! Inhomogeneous TQ-equation and its dual.
//!
//! For a transfer-matrix eigenvalue `T(u)` the TQ-equation reads
//!
//! ```text
//! -u T Q = g^- (u^+)^{2N+1} Q^{--} + f^+ (u^-)^{2N+1} Q^{++} - gamma u (u^- u^+)^{2N+1}
//! ```
//!
//! with `h^{+-}(u) = h(u +- i/2)` and `h^{++/--}(u) = h(u +- i)`. The dual
//! equation for `P` is the same with `f` and `g` interchanged. Both are
//! linear in the unknown polynomial once `T` is fixed, so `Q` and `P` are
//! found by least squares over their even coefficients.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::poly::{sup_norm, Polynomial, C64, HALF_I, I};

/// Radius of the circle carrying the collocation nodes.
pub const NODE_RADIUS: f64 = 1.7;
/// Singular-value ratio below which the design matrix counts as rank deficient.
pub const RANK_TOL: f64 = 1e-13;
/// Relative odd-coefficient mass tolerated by [`extract_roots`].
pub const EVEN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryFunctions {
    pub f: Polynomial,
    pub g: Polynomial,
    pub gamma: f64,
}

impl BoundaryFunctions {
    /// `f` and `g` interchanged, which is what reflecting all boundary
    /// parameters does to the TQ-equation.
    pub fn swapped(&self) -> Self {
        Self {
            f: self.g.clone(),
            g: self.f.clone(),
            gamma: self.gamma,
        }
    }
}

/// `f(u) = (u - i alpha)(u sqrt(1 + xi^2) + i beta)`, `g(u) = f(-u)`.
pub fn boundary_functions(params: &ModelParams) -> BoundaryFunctions {
    let f = &Polynomial::linear(I * params.alpha)
        * &Polynomial::new(vec![I * params.beta, C64::new(params.root_term(), 0.0)]);
    let g = f.reflect();
    BoundaryFunctions {
        f,
        g,
        gamma: params.gamma(),
    }
}

/// `(u - i/2)(u + i/2) = u^2 + 1/4`.
fn u_minus_u_plus() -> Polynomial {
    Polynomial::from_real(&[0.25, 0.0, 1.0])
}

/// `gamma u (u^- u^+)^{2N+1}`.
pub fn inhomogeneous_term(gamma: f64, n_sites: usize) -> Polynomial {
    let u = Polynomial::monomial(C64::new(gamma, 0.0), 1);
    &u * &u_minus_u_plus().pow(2 * n_sites as u32 + 1)
}

/// The TQ-equation defect
/// `-u T Q - [g^- (u^+)^{2N+1} Q^{--} + f^+ (u^-)^{2N+1} Q^{++} - gamma u (u^- u^+)^{2N+1}]`
/// computed with exact polynomial shifts.
pub fn tq_defect(
    t: &Polynomial,
    q: &Polynomial,
    bf: &BoundaryFunctions,
    n_sites: usize,
) -> Polynomial {
    let power = 2 * n_sites as u32 + 1;
    let u = Polynomial::monomial(C64::new(1.0, 0.0), 1);
    let lhs = -&(&(&u * t) * q);
    let left = &(&bf.g.minus() * &Polynomial::linear(-HALF_I).pow(power)) * &q.shift(-I);
    let right = &(&bf.f.plus() * &Polynomial::linear(HALF_I).pow(power)) * &q.shift(I);
    let rhs = &(&left + &right) - &inhomogeneous_term(bf.gamma, n_sites);
    &lhs - &rhs
}

/// Defect of the dual TQ-equation, `f` and `g` interchanged.
pub fn dual_tq_defect(
    t: &Polynomial,
    p: &Polynomial,
    bf: &BoundaryFunctions,
    n_sites: usize,
) -> Polynomial {
    tq_defect(t, p, &bf.swapped(), n_sites)
}

/// The four terms of the TQ-equation at one point, as they enter the
/// defect: `-u T Q`, `-g^- (u^+)^{2N+1} Q^{--}`, `-f^+ (u^-)^{2N+1} Q^{++}`,
/// `+gamma u (u^- u^+)^{2N+1}`.
fn terms_at(
    u: C64,
    t_val: C64,
    q: impl Fn(C64) -> C64,
    bf: &BoundaryFunctions,
    n_sites: usize,
) -> [C64; 4] {
    let power = 2 * n_sites as i32 + 1;
    let up = u + HALF_I;
    let um = u - HALF_I;
    [
        -u * t_val * q(u),
        -bf.g.eval(um) * up.powi(power) * q(u - I),
        -bf.f.eval(up) * um.powi(power) * q(u + I),
        u * (um * up).powi(power) * bf.gamma,
    ]
}

/// Collocation nodes: `4N + 6` points on the upper half of the circle of
/// radius [`NODE_RADIUS`], clear of `0`, `+-i/2` and `+-i`.
pub fn collocation_nodes(n_sites: usize) -> Vec<C64> {
    let count = 4 * n_sites + 6;
    (0..count)
        .map(|k| {
            C64::from_polar(
                NODE_RADIUS,
                std::f64::consts::PI * (k as f64 + 0.5) / count as f64,
            )
        })
        .collect()
}

/// Relative defect at the collocation nodes: the largest defect divided by
/// the largest single term.
pub fn node_residual(
    t: &Polynomial,
    q: &Polynomial,
    bf: &BoundaryFunctions,
    n_sites: usize,
) -> f64 {
    let mut defect = 0.0_f64;
    let mut scale = 0.0_f64;
    for u in collocation_nodes(n_sites) {
        let terms = terms_at(u, t.eval(u), |x| q.eval(x), bf, n_sites);
        defect = defect.max(terms.iter().sum::<C64>().norm());
        scale = scale.max(terms.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    defect / scale
}

/// Monic even solution `u^{2m} + sum_{j<m} c_j u^{2j}` of the TQ-equation
/// with boundary functions `bf`, for a fixed half-degree `m`.
///
/// Returns the polynomial and its relative node residual. Columns are
/// equilibrated before the SVD least-squares solve.
pub fn solve_with_half_degree(
    t: &Polynomial,
    bf: &BoundaryFunctions,
    n_sites: usize,
    half_degree: usize,
) -> Result<(Polynomial, f64)> {
    let nodes = collocation_nodes(n_sites);
    let rows = nodes.len();
    let mut design = DMatrix::<C64>::zeros(rows, half_degree);
    let mut rhs = DVector::<C64>::zeros(rows);
    for (r, &u) in nodes.iter().enumerate() {
        let t_val = t.eval(u);
        for m in 0..half_degree {
            let terms = terms_at(u, t_val, |x| x.powi(2 * m as i32), bf, n_sites);
            design[(r, m)] = terms[..3].iter().sum();
        }
        let lead = terms_at(u, t_val, |x| x.powi(2 * half_degree as i32), bf, n_sites);
        rhs[r] = -lead.iter().sum::<C64>();
    }

    let mut coeffs = vec![C64::default(); 2 * half_degree + 1];
    coeffs[2 * half_degree] = C64::new(1.0, 0.0);
    if half_degree > 0 {
        let col_scale: Vec<f64> = (0..half_degree)
            .map(|m| sup_norm(design.column(m)).max(f64::MIN_POSITIVE))
            .collect();
        for (m, s) in col_scale.iter().enumerate() {
            design.column_mut(m).unscale_mut(*s);
        }
        let svd = design.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
        if ratio < RANK_TOL {
            return Err(Error::RankDeficient { ratio });
        }
        let sol = svd
            .solve(&rhs, 0.0)
            .map_err(|_| Error::RankDeficient { ratio })?;
        for (m, s) in col_scale.iter().enumerate() {
            coeffs[2 * m] = sol[m] / *s;
        }
    }
    let q = Polynomial::new(coeffs);
    let residual = node_residual(t, &q, bf, n_sites);
    Ok((q, residual))
}

/// Solution of the TQ-equation for `bf`.
///
/// With `gamma != 0` the ansatz is the monic even polynomial of degree
/// `2N`. With `gamma == 0` the equation is homogeneous and its polynomial
/// solution has degree `2M`, `M` depending on the magnetization sector;
/// every `M` in `0..=N` is tried and the smallest residual wins.
fn solve_any(t: &Polynomial, bf: &BoundaryFunctions, n_sites: usize) -> Result<(Polynomial, f64)> {
    if bf.gamma != 0.0 {
        return solve_with_half_degree(t, bf, n_sites, n_sites);
    }
    let mut best: Option<(Polynomial, f64)> = None;
    let mut last_err = None;
    for m in 0..=n_sites {
        match solve_with_half_degree(t, bf, n_sites, m) {
            Ok(cand) => {
                if best.as_ref().is_none_or(|b| cand.1 < b.1) {
                    best = Some(cand);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::RankDeficient { ratio: 0.0 }))
}

/// `Q` from the TQ-equation for eigenvalue `t`.
pub fn solve_q(
    t: &Polynomial,
    bf: &BoundaryFunctions,
    n_sites: usize,
) -> Result<(Polynomial, f64)> {
    solve_any(t, bf, n_sites)
}

/// `P` from the dual TQ-equation for eigenvalue `t`.
pub fn solve_p(
    t: &Polynomial,
    bf: &BoundaryFunctions,
    n_sites: usize,
) -> Result<(Polynomial, f64)> {
    solve_any(t, &bf.swapped(), n_sites)
}

/// Roots `u_k` of an even polynomial `prod (u - u_k)(u + u_k)`, one per
/// pair, canonicalized to `Re u_k > 0` (or `Re u_k = 0`, `Im u_k >= 0`).
pub fn extract_roots(q: &Polynomial) -> Result<Vec<C64>> {
    let (odd, even) = q.parity_defect();
    if odd > EVEN_TOL * even {
        return Err(Error::NotEven { odd, even });
    }
    let w = Polynomial::new(q.coeffs().iter().step_by(2).copied().collect());
    let mut roots: Vec<C64> = w
        .roots()?
        .into_iter()
        .map(|r| {
            let s = r.sqrt();
            // a real part at rounding level counts as zero
            let flat = s.re.abs() <= 1e-12 * s.norm();
            if (!flat && s.re < 0.0) || (flat && s.im < 0.0) {
                -s
            } else {
                s
            }
        })
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Everything solved for one eigenvalue.
#[derive(Clone, Debug, Serialize)]
pub struct TQSolution {
    pub t_poly: Polynomial,
    pub q_poly: Polynomial,
    pub p_poly: Polynomial,
    pub q_residual: f64,
    pub p_residual: f64,
    #[serde(with = "complex_list")]
    pub bethe_roots: Vec<C64>,
    #[serde(with = "complex_list")]
    pub dual_roots: Vec<C64>,
}

impl TQSolution {
    pub fn solve(t: &Polynomial, bf: &BoundaryFunctions, n_sites: usize) -> Result<Self> {
        let (q_poly, q_residual) = solve_q(t, bf, n_sites)?;
        let (p_poly, p_residual) = solve_p(t, bf, n_sites)?;
        Ok(Self {
            t_poly: t.clone(),
            bethe_roots: extract_roots(&q_poly)?,
            dual_roots: extract_roots(&p_poly)?,
            q_poly,
            p_poly,
            q_residual,
            p_residual,
        })
    }
}

pub(crate) mod complex_list {
    use serde::Serializer;

    use crate::poly::C64;

    pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| [c.re, c.im]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn boundary_functions_diagonal() {
        let p = ModelParams::new(1, 0.6, 1.1, 0.0).unwrap();
        let bf = boundary_functions(&p);
        assert_eq!(bf.gamma, 0.0);
        let f = &Polynomial::linear(c(0.0, 0.6)) * &Polynomial::linear(c(0.0, -1.1));
        let g = &Polynomial::linear(c(0.0, -0.6)) * &Polynomial::linear(c(0.0, 1.1));
        assert!((&bf.f - &f).max_abs() < 1e-15);
        assert!((&bf.g - &g).max_abs() < 1e-15);
    }

    #[test]
    fn boundary_functions_gamma() {
        let p = ModelParams::new(1, 0.6, 1.1, 0.75).unwrap();
        let bf = boundary_functions(&p);
        assert!((bf.gamma - 0.5).abs() < 1e-15);
        assert!((bf.f.leading() - 1.25).norm() < 1e-15);
        assert_eq!(bf.g, bf.f.reflect());
        let p = ModelParams::new(1, 0.6, 1.1, 4.0 / 3.0).unwrap();
        assert!((boundary_functions(&p).gamma - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn leading_coefficient_of_rhs_is_two() {
        // g^- (u^+)^{2N+1} Q^{--} + f^+ (u^-)^{2N+1} Q^{++} - gamma u (u^- u^+)^{2N+1}
        // with monic Q of degree 2N has leading coefficient 2 for every xi
        for xi in [0.0, 0.3, 1.7] {
            let n = 2;
            let p = ModelParams::new(n, 0.6, 1.1, xi).unwrap();
            let bf = boundary_functions(&p);
            let q = Polynomial::from_real(&[0.3, 0.0, -1.0, 0.0, 1.0]);
            let rhs = -&tq_defect(&Polynomial::zero(), &q, &bf, n);
            assert_eq!(rhs.degree(), Some(4 * n + 3));
            assert!(
                (rhs.leading() - 2.0).norm() < 1e-12,
                "xi = {xi}: {}",
                rhs.leading()
            );
        }
    }

    #[test]
    fn random_pair_has_nonzero_defect() {
        let p = ModelParams::new(1, 0.6, 1.1, 0.4).unwrap();
        let bf = boundary_functions(&p);
        let t = Polynomial::from_real(&[1.0, 0.0, 2.0, 0.0, -2.0]);
        let q = Polynomial::from_real(&[0.5, 0.0, 1.0]);
        assert!(tq_defect(&t, &q, &bf, 1).max_abs() > 1e-3);
    }

    #[test]
    fn extract_roots_examples() {
        let q = Polynomial::from_real(&[4.0, 0.0, -5.0, 0.0, 1.0]);
        let r = extract_roots(&q).unwrap();
        assert!((r[0] - 1.0).norm() < 1e-12 && (r[1] - 2.0).norm() < 1e-12);
        let r = extract_roots(&Polynomial::from_real(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(r, vec![c(0.0, 0.0)]);
        assert!(matches!(
            extract_roots(&Polynomial::from_real(&[1.0, 1.0, 1.0])),
            Err(Error::NotEven { .. })
        ));
        // w = -4 gives the canonical root 2i
        let r = extract_roots(&Polynomial::from_real(&[4.0, 0.0, 1.0])).unwrap();
        assert!((r[0] - c(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn collocation_nodes_avoid_singular_points() {
        for n in 1..=8 {
            let nodes = collocation_nodes(n);
            assert_eq!(nodes.len(), 4 * n + 6);
            for z in nodes {
                assert!(z.im > 0.0);
                for bad in [c(0.0, 0.0), c(0.0, 0.5), c(0.0, 1.0)] {
                    assert!((z - bad).norm() > 0.5);
                }
            }
        }
    }
}
