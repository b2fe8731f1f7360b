//! Dense univariate polynomials with complex coefficients.
//!
//! Coefficients are stored in ascending order, so `coeffs[k]` multiplies
//! `u^k`. Exact trailing zeros are dropped on construction; near-zero
//! trailing coefficients are only removed by [`Polynomial::normalize`].
//!
//! Besides ring arithmetic this module provides the two operations the
//! TQ formalism is written in: the argument shift `p(u) -> p(u + c)` and
//! its inverse difference, the discrete antidifference with respect to
//! the step `i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const HALF_I: C64 = C64::new(0.0, 0.5);

/// Relative threshold used by [`Polynomial::normalize`].
pub const TRIM_REL: f64 = 1e-13;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl From<Vec<[f64; 2]>> for Polynomial {
    fn from(pairs: Vec<[f64; 2]>) -> Self {
        Self::new(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

impl From<Polynomial> for Vec<[f64; 2]> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    /// The monomial `c * u^k`.
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `u - a`.
    pub fn linear(a: C64) -> Self {
        Self::new(vec![-a, C64::new(1.0, 0.0)])
    }

    /// `lead * prod (u - r)`.
    pub fn from_roots(lead: C64, roots: &[C64]) -> Self {
        roots
            .iter()
            .fold(Self::constant(lead), |acc, &r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `u^k`, zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, u: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * u + c)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Drops trailing coefficients below `TRIM_REL * max_abs`.
    pub fn normalize(&self) -> Self {
        self.trimmed(TRIM_REL)
    }

    pub fn trimmed(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    /// Highest index whose coefficient exceeds `rel * max_abs`.
    pub fn effective_degree(&self, rel: f64) -> Option<usize> {
        self.trimmed(rel).degree()
    }

    /// `p(-u)`: negates the odd coefficients.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// `r(u) = p(u + c)`, by repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: C64) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = a[j + 1];
                a[j] += c * next;
            }
        }
        Self::new(a)
    }

    /// `p(u + i/2)`.
    pub fn plus(&self) -> Self {
        self.shift(HALF_I)
    }

    /// `p(u - i/2)`.
    pub fn minus(&self) -> Self {
        self.shift(-HALF_I)
    }

    /// `p(u + i/2) - p(u - i/2)`.
    pub fn difference(&self) -> Self {
        &self.plus() - &self.minus()
    }

    /// Solves `mu(u + i/2) - mu(u - i/2) = h` with `mu(0) = 0`.
    ///
    /// The difference operator lowers degree by exactly one and acts on
    /// `u^k` with leading coefficient `k i`, so the coefficients of `mu`
    /// follow by back substitution from the top.
    pub fn antidifference(&self) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let mut rest = self.coeffs.clone();
        let mut mu = vec![C64::new(0.0, 0.0); d + 2];
        for k in (1..=d + 1).rev() {
            let m = rest[k - 1] / (I * k as f64);
            mu[k] = m;
            let delta = Self::monomial(m, k).difference();
            for (j, c) in delta.coeffs.iter().enumerate().take(k) {
                rest[j] -= c;
            }
        }
        Self::new(mu)
    }

    /// Splits off the factor `u^k`: returns the quotient `coeffs[k..]`
    /// and the largest modulus among the discarded `coeffs[..k]`.
    pub fn divide_by_power(&self, k: usize) -> (Self, f64) {
        let split = k.min(self.coeffs.len());
        let defect = self.coeffs[..split]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        (Self::new(self.coeffs[split..].to_vec()), defect)
    }

    /// `(max |odd coefficient|, max |even coefficient|)`.
    pub fn parity_defect(&self) -> (f64, f64) {
        let mut odd = 0.0_f64;
        let mut even = 0.0_f64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 1 {
                odd = odd.max(c.norm());
            } else {
                even = even.max(c.norm());
            }
        }
        (odd, even)
    }

    /// Unique polynomial of degree `< nodes.len()` through `(x, y)` pairs.
    ///
    /// The Vandermonde system is solved in the centred and scaled variable
    /// `s = (u - c) / h` and the result is mapped back to `u` exactly.
    pub fn interpolate(nodes: &[(C64, C64)]) -> Result<Self> {
        let n = nodes.len();
        if n == 0 {
            return Ok(Self::zero());
        }
        let center = nodes.iter().map(|(x, _)| *x).sum::<C64>() / n as f64;
        let radius = nodes
            .iter()
            .map(|(x, _)| (x - center).norm())
            .fold(0.0, f64::max);
        let min_gap = 1e-14 * radius.max(center.norm()).max(1.0);
        for i in 0..n {
            for j in i + 1..n {
                if (nodes[i].0 - nodes[j].0).norm() <= min_gap {
                    return Err(Error::DuplicateNode(i, j));
                }
            }
        }
        if n == 1 {
            return Ok(Self::constant(nodes[0].1));
        }
        let vander = DMatrix::from_fn(n, n, |i, k| ((nodes[i].0 - center) / radius).powi(k as i32));
        let rhs = DVector::from_iterator(n, nodes.iter().map(|(_, y)| *y));
        let a = vander.lu().solve(&rhs).ok_or(Error::DuplicateNode(0, 1))?;
        let scaled = Self::new(
            a.iter()
                .enumerate()
                .map(|(k, &c)| c / radius.powi(k as i32))
                .collect(),
        );
        Ok(scaled.shift(-center))
    }

    /// All complex roots with multiplicity.
    ///
    /// Eigenvalues of the companion matrix from a complex Schur
    /// decomposition, followed by a few guarded Newton steps on `self`.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        let mut companion = DMatrix::<C64>::zeros(d, d);
        for i in 1..d {
            companion[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..d {
            companion[(i, d - 1)] = -self.coeffs[i] / lead;
        }
        let (_, tri) = companion.schur().unpack();
        let deriv = self.derivative();
        let roots = (0..d)
            .map(|i| {
                let mut z = tri[(i, i)];
                let mut fz = self.eval(z).norm();
                for _ in 0..4 {
                    let dz = deriv.eval(z);
                    if dz.norm() == 0.0 {
                        break;
                    }
                    let cand = z - self.eval(z) / dz;
                    let fc = self.eval(cand).norm();
                    if fc < fz {
                        z = cand;
                        fz = fc;
                    } else {
                        break;
                    }
                }
                z
            })
            .collect();
        Ok(roots)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }
}

/// Largest modulus over a collection of complex numbers.
pub fn sup_norm<'a>(values: impl IntoIterator<Item = &'a C64>) -> f64 {
    values.into_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `n` Chebyshev points of the first kind mapped to `[a, b]`.
pub fn chebyshev_nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let t = (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * t
        })
        .collect()
}

/// `n` points `radius * exp(2 pi i k / n)`.
pub fn circle_nodes(radius: f64, n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect()
}

fn zip_coeffs(p: &Polynomial, q: &Polynomial, op: impl Fn(C64, C64) -> C64) -> Polynomial {
    let n = p.coeffs.len().max(q.coeffs.len());
    Polynomial::new((0..n).map(|k| op(p.coeff(k), q.coeff(k))).collect())
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        zip_coeffs(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        zip_coeffs(self, rhs, |a, b| a - b)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(C64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})u"),
                _ => format!("({c})u^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
