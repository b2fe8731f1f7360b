//! Open XXX spin-1/2 chain with boundary fields: R- and K-matrices,
//! monodromy and transfer matrices, Hamiltonian, charge conjugation.
//!
//! Basis convention: tensor factors are ordered left to right with the
//! leftmost factor most significant. Site 1 is the leftmost quantum factor;
//! during monodromy construction the auxiliary space 0 is an extra factor to
//! the left of site 1 and is traced out at the end. Spin up is `|0>`, so
//! `sigma^z = diag(1, -1)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{sup_norm, C64, HALF_I, I};

pub type CMatrix = DMatrix<C64>;

/// Largest chain length accepted anywhere in the crate.
pub const MAX_SITES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n_sites: usize,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
}

impl ModelParams {
    pub fn new(n_sites: usize, alpha: f64, beta: f64, xi: f64) -> Result<Self> {
        if n_sites == 0 || n_sites > MAX_SITES {
            return Err(Error::InvalidParams(format!(
                "n_sites must lie in 1..={MAX_SITES}, got {n_sites}"
            )));
        }
        for (name, v) in [("alpha", alpha), ("beta", beta), ("xi", xi)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if v == 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be nonzero: the Hamiltonian boundary terms are 1/alpha sigma^z_N \
                     and -(xi sigma^x_1 + sigma^z_1)/beta"
                )));
            }
        }
        Ok(Self {
            n_sites,
            alpha,
            beta,
            xi,
        })
    }

    /// `sqrt(1 + xi^2)`.
    pub fn root_term(&self) -> f64 {
        self.xi.hypot(1.0)
    }

    /// Coefficient of the inhomogeneous term, `-2 (1 - sqrt(1 + xi^2))`.
    ///
    /// Written as `2 xi^2 / (1 + sqrt(1 + xi^2))` to avoid cancellation
    /// for small `xi`; it vanishes exactly when `xi == 0`.
    pub fn gamma(&self) -> f64 {
        2.0 * self.xi * self.xi / (1.0 + self.root_term())
    }

    /// All boundary parameters negated.
    pub fn reflected(&self) -> Self {
        Self {
            alpha: -self.alpha,
            beta: -self.beta,
            xi: -self.xi,
            ..*self
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }
}

/// `(u - i/2) I + i P` on `C^2 (x) C^2`.
pub fn r_matrix(u: C64) -> CMatrix {
    CMatrix::from_fn(4, 4, |r, c| {
        let swap = usize::from(r == ((c & 1) << 1 | c >> 1));
        let id = usize::from(r == c);
        (u - HALF_I) * id as f64 + I * swap as f64
    })
}

pub fn k_right(u: C64, params: &ModelParams) -> CMatrix {
    let a = params.alpha;
    CMatrix::from_row_slice(
        2,
        2,
        &[
            I * (a - 0.5) + u,
            C64::default(),
            C64::default(),
            I * (a + 0.5) - u,
        ],
    )
}

pub fn k_left(u: C64, params: &ModelParams) -> CMatrix {
    let b = params.beta;
    let off = -(u + HALF_I) * params.xi;
    CMatrix::from_row_slice(2, 2, &[I * (b - 0.5) - u, off, off, I * (b + 0.5) + u])
}

/// In-place left multiplication by `R_{0j}(u)` on auxiliary (x) quantum space.
fn apply_r0j(x: &mut CMatrix, u: C64, site: usize, n: usize) {
    let aux_bit = 1 << n;
    let site_bit = 1 << (n - site);
    let diag = u - HALF_I;
    let src = x.clone();
    for r in 0..x.nrows() {
        let a = r & aux_bit != 0;
        let s = r & site_bit != 0;
        let partner = if a == s { r } else { r ^ aux_bit ^ site_bit };
        for c in 0..x.ncols() {
            x[(r, c)] = diag * src[(r, c)] + I * src[(partner, c)];
        }
    }
}

/// In-place left multiplication by a 2x2 matrix acting on the auxiliary space.
fn apply_aux(x: &mut CMatrix, k: &CMatrix, n: usize) {
    let half = 1 << n;
    for r in 0..half {
        for c in 0..x.ncols() {
            let top = x[(r, c)];
            let bot = x[(r + half, c)];
            x[(r, c)] = k[(0, 0)] * top + k[(0, 1)] * bot;
            x[(r + half, c)] = k[(1, 0)] * top + k[(1, 1)] * bot;
        }
    }
}

/// `(M_0(u), Mhat_0(u))` with `M = R_01 ... R_0N` and `Mhat = R_0N ... R_01`,
/// as operators on auxiliary (x) quantum space.
pub fn monodromy(u: C64, params: &ModelParams) -> (CMatrix, CMatrix) {
    let n = params.n_sites;
    let dim = 2 << n;
    let mut m = CMatrix::identity(dim, dim);
    for site in (1..=n).rev() {
        apply_r0j(&mut m, u, site, n);
    }
    let mut m_hat = CMatrix::identity(dim, dim);
    for site in 1..=n {
        apply_r0j(&mut m_hat, u, site, n);
    }
    (m, m_hat)
}

/// `tr_0 K^L_0(u) M_0(u) K^R_0(u) Mhat_0(u)`.
pub fn transfer_matrix(u: C64, params: &ModelParams) -> CMatrix {
    let n = params.n_sites;
    let half = 1 << n;
    let mut x = CMatrix::identity(2 * half, 2 * half);
    for site in 1..=n {
        apply_r0j(&mut x, u, site, n);
    }
    apply_aux(&mut x, &k_right(u, params), n);
    for site in (1..=n).rev() {
        apply_r0j(&mut x, u, site, n);
    }
    apply_aux(&mut x, &k_left(u, params), n);
    CMatrix::from_fn(half, half, |r, c| x[(r, c)] + x[(r + half, c + half)])
}

/// Real symmetric Hamiltonian on `2^N` states.
pub fn hamiltonian(params: &ModelParams) -> DMatrix<f64> {
    let n = params.n_sites;
    let dim = params.dim();
    let bit = |site: usize| 1usize << (n - site);
    let sz = |state: usize, site: usize| if state & bit(site) == 0 { 1.0 } else { -1.0 };
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        // sigma_k . sigma_{k+1} = 2 P_{k,k+1} - 1
        for k in 1..n {
            if sz(s, k) == sz(s, k + 1) {
                h[(s, s)] += 1.0;
            } else {
                h[(s, s)] -= 1.0;
                h[(s ^ bit(k) ^ bit(k + 1), s)] += 2.0;
            }
        }
        h[(s ^ bit(1), s)] -= params.xi / params.beta;
        h[(s, s)] += -sz(s, 1) / params.beta + sz(s, n) / params.alpha;
    }
    h
}

/// `(sigma^x)^{(x) N}`.
pub fn charge_conjugation(params: &ModelParams) -> CMatrix {
    let dim = params.dim();
    CMatrix::from_fn(dim, dim, |r, c| {
        C64::new(f64::from(u8::from(r == c ^ (dim - 1))), 0.0)
    })
}

pub fn max_abs(m: &CMatrix) -> f64 {
    sup_norm(m)
}

/// `max|[T(u), T(v)]| / (max|T(u)| max|T(v)|)`.
pub fn commutativity_defect(params: &ModelParams, u: C64, v: C64) -> f64 {
    let tu = transfer_matrix(u, params);
    let tv = transfer_matrix(v, params);
    let comm = &tu * &tv - &tv * &tu;
    max_abs(&comm) / (max_abs(&tu) * max_abs(&tv))
}

/// `max|T(u) - T(-u)| / max|T(u)|`.
pub fn parity_defect(params: &ModelParams, u: C64) -> f64 {
    let tu = transfer_matrix(u, params);
    max_abs(&(&tu - transfer_matrix(-u, params))) / max_abs(&tu)
}

/// `max|C T(u; a, b, x) C - T(u; -a, -b, -x)| / max|T|`.
pub fn duality_defect(params: &ModelParams, u: C64) -> f64 {
    let c = charge_conjugation(params);
    let tu = transfer_matrix(u, params);
    let conj = &c * &tu * &c;
    max_abs(&(conj - transfer_matrix(u, &params.reflected()))) / max_abs(&tu)
}

/// Affine fit `dT/du |_{u = i/2} ~ scale * H + shift * I`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HamiltonianLink {
    pub scale: C64,
    pub shift: C64,
    /// Largest entry of the fit remainder relative to the largest entry of
    /// the derivative.
    pub defect: f64,
}

/// Central difference of `T` at `i/2` with the given step, least-squares
/// fitted onto `span{H, I}` over all matrix entries.
pub fn hamiltonian_link(params: &ModelParams, step: f64) -> HamiltonianLink {
    let dim = params.dim();
    let deriv = (transfer_matrix(HALF_I + step, params) - transfer_matrix(HALF_I - step, params))
        / C64::new(2.0 * step, 0.0);
    let h = hamiltonian(params).map(|x| C64::new(x, 0.0));
    let id = CMatrix::identity(dim, dim);
    let inner = |a: &CMatrix, b: &CMatrix| a.dotc(b);
    let (hh, hi, ii) = (inner(&h, &h), inner(&h, &id), inner(&id, &id));
    let (hd, id_d) = (inner(&h, &deriv), inner(&id, &deriv));
    let det = hh * ii - hi * hi.conj();
    let scale = (ii * hd - hi * id_d) / det;
    let shift = (hh * id_d - hi.conj() * hd) / det;
    let remainder = &deriv - &h * scale - &id * shift;
    HamiltonianLink {
        scale,
        shift,
        defect: max_abs(&remainder) / max_abs(&deriv),
    }
}
