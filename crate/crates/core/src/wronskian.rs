//! The Wronskian-type identity relating `Q` and `P`:
//!
//! ```text
//! W(u) = g P^+ Q^- - f P^- Q^+ = mu(u) u^{2N+1},   mu^+ - mu^- = gamma u (Q - P)
//! ```
//!
//! `mu` is computed twice: by dividing `W` by `u^{2N+1}`, and as the
//! discrete antidifference of `gamma u (Q - P)`. The two must agree up to
//! an additive constant.

use serde::Serialize;

use crate::poly::{Polynomial, C64};
use crate::tq::{BoundaryFunctions, TQSolution};

/// Coefficients below this fraction of the largest one do not count toward
/// the reported degree.
pub const DEGREE_REL: f64 = 1e-8;

/// `g P^+ Q^- - f P^- Q^+`.
pub fn wronskian_poly(q: &Polynomial, p: &Polynomial, bf: &BoundaryFunctions) -> Polynomial {
    let first = &(&bf.g * &p.plus()) * &q.minus();
    let second = &(&bf.f * &p.minus()) * &q.plus();
    &first - &second
}

/// Quotient of `w` by `u^{2N+1}` and the discarded low-order mass relative
/// to the largest coefficient of `w`.
pub fn extract_mu(w: &Polynomial, n_sites: usize) -> (Polynomial, f64) {
    let (mu, defect) = w.divide_by_power(2 * n_sites + 1);
    let scale = w.max_abs();
    (mu, if scale > 0.0 { defect / scale } else { 0.0 })
}

/// Antidifference of `gamma u (q - p)` with zero constant term.
pub fn mu_from_antidifference(q: &Polynomial, p: &Polynomial, gamma: f64) -> Polynomial {
    let source = &Polynomial::monomial(C64::new(gamma, 0.0), 1) * &(q - p);
    source.antidifference()
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityChecks {
    pub divisible: bool,
    pub mu_match: bool,
    pub difference_relation: bool,
    pub w_odd: bool,
    pub mu_even: bool,
    pub degree_bounds: bool,
}

impl IdentityChecks {
    pub fn all(&self) -> bool {
        self.divisible
            && self.mu_match
            && self.difference_relation
            && self.w_odd
            && self.mu_even
            && self.degree_bounds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WronskianReport {
    pub w_poly: Polynomial,
    /// `W / u^{2N+1}`.
    pub mu_poly: Polynomial,
    /// Antidifference route, zero constant term.
    pub mu_anti: Polynomial,
    pub divisibility_defect: f64,
    /// Disagreement of the two `mu` after aligning constant terms.
    pub mu_match_defect: f64,
    /// Coefficient defect of `mu^+ - mu^- - gamma u (Q - P)` for the divided `mu`.
    pub relation_defect: f64,
    /// Even-coefficient mass of `W` relative to its largest coefficient.
    pub w_parity_defect: f64,
    /// Odd-coefficient mass of `mu` relative to its largest coefficient.
    pub mu_parity_defect: f64,
    pub w_degree: Option<usize>,
    pub mu_degree: Option<usize>,
    pub checks: IdentityChecks,
    pub passed: bool,
}

/// Checks the identity for one solved eigenvalue at relative tolerance `tol`.
pub fn verify_identity(
    sol: &TQSolution,
    bf: &BoundaryFunctions,
    n_sites: usize,
    tol: f64,
) -> WronskianReport {
    let w = wronskian_poly(&sol.q_poly, &sol.p_poly, bf);
    let (mu, divisibility_defect) = extract_mu(&w, n_sites);
    let mu_anti = mu_from_antidifference(&sol.q_poly, &sol.p_poly, bf.gamma);

    let aligned = &(&mu - &Polynomial::constant(mu.coeff(0)))
        - &(&mu_anti - &Polynomial::constant(mu_anti.coeff(0)));
    let mu_match_defect = ratio(aligned.max_abs(), mu.max_abs().max(mu_anti.max_abs()));

    let source = &Polynomial::monomial(C64::new(bf.gamma, 0.0), 1) * &(&sol.q_poly - &sol.p_poly);
    let relation = &mu.difference() - &source;
    let relation_defect = ratio(relation.max_abs(), mu.max_abs().max(source.max_abs()));

    let (w_even_part, w_scale) = {
        let (odd, even) = w.parity_defect();
        (even, odd.max(even))
    };
    let w_parity_defect = ratio(w_even_part, w_scale);
    let (mu_odd, mu_even) = mu.parity_defect();
    let mu_parity_defect = ratio(mu_odd, mu_odd.max(mu_even));

    let w_degree = w.effective_degree(DEGREE_REL);
    let mu_degree = mu.effective_degree(DEGREE_REL);
    let degree_bounds =
        w_degree.is_none_or(|d| d <= 4 * n_sites + 1) && mu_degree.is_none_or(|d| d <= 2 * n_sites);

    let checks = IdentityChecks {
        divisible: divisibility_defect < tol,
        mu_match: mu_match_defect < tol,
        difference_relation: relation_defect < tol,
        w_odd: w_parity_defect < tol,
        mu_even: mu_parity_defect < tol,
        degree_bounds,
    };
    WronskianReport {
        w_poly: w,
        mu_poly: mu,
        mu_anti,
        divisibility_defect,
        mu_match_defect,
        relation_defect,
        w_parity_defect,
        mu_parity_defect,
        w_degree,
        mu_degree,
        passed: checks.all(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ModelParams;
    use crate::tq::boundary_functions;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn extract_mu_of_pure_power() {
        let w = Polynomial::monomial(c(2.5, -1.0), 5);
        let (mu, defect) = extract_mu(&w, 2);
        assert_eq!(mu, Polynomial::constant(c(2.5, -1.0)));
        assert_eq!(defect, 0.0);
    }

    #[test]
    fn antidifference_route_vanishes_without_gamma() {
        let q = Polynomial::from_real(&[1.0, 0.0, 3.0, 0.0, 1.0]);
        let p = Polynomial::from_real(&[-2.0, 0.0, 0.5, 0.0, 1.0]);
        assert!(mu_from_antidifference(&q, &p, 0.0).is_zero());
    }

    #[test]
    fn antidifference_route_constant_difference() {
        // q - p = c gives mu = gamma c (-i/2) u^2
        let gamma = 0.7;
        let q = Polynomial::from_real(&[3.0, 0.0, 1.0]);
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let mu = mu_from_antidifference(&q, &p, gamma);
        let expected = Polynomial::monomial(c(0.0, -0.5) * gamma * 2.0, 2);
        assert!((&mu - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn wronskian_of_equal_pair_matches_pointwise() {
        let params = ModelParams::new(2, 0.7, 1.3, 0.75).unwrap();
        let bf = boundary_functions(&params);
        let q = Polynomial::from_real(&[0.4, 0.0, -1.3, 0.0, 1.0]);
        let w = wronskian_poly(&q, &q, &bf);
        for k in 0..10 {
            let u = c(0.3 * k as f64 - 1.2, 0.17 * k as f64 - 0.4);
            let h = C64::new(0.0, 0.5);
            let direct = bf.g.eval(u) * q.eval(u + h) * q.eval(u - h)
                - bf.f.eval(u) * q.eval(u - h) * q.eval(u + h);
            assert!((w.eval(u) - direct).norm() < 1e-12 * direct.norm().max(1.0));
        }
        let (odd, even) = w.parity_defect();
        assert!(even <= 1e-14 * odd);
        assert!(w.effective_degree(1e-14).unwrap() <= 4 * 2 + 1);
    }
}
