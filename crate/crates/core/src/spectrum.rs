//! Joint eigenbasis of the commuting family `{H, T(u)}` and the
//! transfer-matrix eigenvalues as explicit polynomials `T(u)`.

use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{hamiltonian, max_abs, transfer_matrix, CMatrix, ModelParams};
use crate::error::{Error, Result};
use crate::poly::{circle_nodes, sup_norm, Polynomial, C64};

pub type CVector = DVector<C64>;

/// Real probe at which `T(u0)` splits degenerate energy levels.
pub const DEFAULT_PROBE: f64 = 0.63;
/// Energy gaps below this fraction of the spectral diameter count as degenerate.
pub const DEGENERACY_REL: f64 = 1e-8;
/// Held-out points for checking each reconstructed eigenvalue polynomial.
pub const HELD_OUT: [f64; 4] = [0.37, 1.91, 3.1, 0.11];
/// Radius of the circle carrying the sampling nodes.
pub const SAMPLE_RADIUS: f64 = 1.5;

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    pub probe: f64,
    pub recon_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            probe: DEFAULT_PROBE,
            recon_tol: 1e-9,
        }
    }
}

/// Joint eigenvector together with its `H` eigenvalue.
#[derive(Clone, Debug)]
pub struct JointEigenvector {
    pub energy: f64,
    pub vector: CVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    pub params: ModelParams,
    pub energies: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Vec<CVector>,
    pub t_polys: Vec<Polynomial>,
    pub recon_residuals: Vec<f64>,
}

impl SpectralData {
    pub fn len(&self) -> usize {
        self.t_polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_polys.is_empty()
    }
}

/// Eigen-decomposition of a general complex matrix via complex Schur form.
///
/// Returns eigenvalues and unit eigenvectors; eigenvectors of the
/// triangular factor come from back substitution.
pub(crate) fn complex_eigen(m: &CMatrix) -> (Vec<C64>, Vec<CVector>) {
    let n = m.nrows();
    let (q, t) = m.clone().schur().unpack();
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let vectors = (0..n)
        .map(|k| {
            let lambda = values[k];
            let mut y = CVector::zeros(n);
            y[k] = C64::new(1.0, 0.0);
            for j in (0..k).rev() {
                let s: C64 = (j + 1..=k).map(|l| t[(j, l)] * y[l]).sum();
                let mut denom = t[(j, j)] - lambda;
                if denom.norm() < f64::EPSILON * lambda.norm().max(1.0) {
                    denom = C64::new(f64::EPSILON * lambda.norm().max(1.0), 0.0);
                }
                y[j] = -s / denom;
            }
            let v = &q * y;
            let norm = v.norm();
            v / C64::new(norm, 0.0)
        })
        .collect();
    (values, vectors)
}

/// Splits indices of an ascending spectrum into runs of (near-)equal values.
fn degenerate_runs(energies: &[f64]) -> Vec<std::ops::Range<usize>> {
    let (lo, hi) = (energies[0], energies[energies.len() - 1]);
    let scale = (hi - lo).max(lo.abs()).max(hi.abs());
    let thresh = DEGENERACY_REL * scale;
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=energies.len() {
        if i == energies.len() || energies[i] - energies[i - 1] > thresh {
            runs.push(start..i);
            start = i;
        }
    }
    runs
}

/// Simultaneous eigenvectors of `H` and every `T(u)`.
///
/// `H` is diagonalized first; each degenerate level is then resolved by
/// diagonalizing the restriction of `T(probe)` to that eigenspace.
/// Output is ordered by energy, ties by the `T(probe)` eigenvalue.
pub fn joint_eigenbasis(params: &ModelParams, probe: f64) -> Result<Vec<JointEigenvector>> {
    let eig = hamiltonian(params).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let columns: Vec<CVector> = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).map(|x| C64::new(x, 0.0)))
        .collect();

    let mut t_probe: Option<CMatrix> = None;
    let mut out = Vec::with_capacity(columns.len());
    for run in degenerate_runs(&energies) {
        if run.len() == 1 {
            out.push(JointEigenvector {
                energy: energies[run.start],
                vector: columns[run.start].clone(),
            });
            continue;
        }
        let t = t_probe.get_or_insert_with(|| transfer_matrix(C64::new(probe, 0.0), params));
        let basis = CMatrix::from_columns(&columns[run.clone()]);
        let restricted = basis.adjoint() * &*t * &basis;
        let (values, vectors) = complex_eigen(&restricted);
        let spread = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if (values[i] - values[j]).norm() <= DEGENERACY_REL * spread.max(f64::MIN_POSITIVE)
                {
                    return Err(Error::UnresolvedDegeneracy {
                        dim: run.len(),
                        probe,
                    });
                }
            }
        }
        let mut resolved: Vec<(C64, CVector)> = values
            .into_iter()
            .zip(vectors)
            .map(|(val, w)| {
                let v = &basis * w;
                let norm = v.norm();
                (val, v / C64::new(norm, 0.0))
            })
            .collect();
        resolved.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        let energy = energies[run.start..run.end].iter().sum::<f64>() / run.len() as f64;
        out.extend(
            resolved
                .into_iter()
                .map(|(_, vector)| JointEigenvector { energy, vector }),
        );
    }
    Ok(out)
}

fn rayleigh(m: &CMatrix, v: &CVector) -> C64 {
    v.dotc(&(m * v)) / v.dotc(v)
}

/// Transfer matrices at the sampling nodes and held-out probes, shared by
/// all eigenvectors of one parameter point.
struct Samples {
    nodes: Vec<C64>,
    node_mats: Vec<CMatrix>,
    probe_mats: Vec<CMatrix>,
}

impl Samples {
    fn new(params: &ModelParams) -> Self {
        let nodes = circle_nodes(SAMPLE_RADIUS, 2 * params.n_sites + 3);
        let node_mats = nodes
            .par_iter()
            .map(|&u| transfer_matrix(u, params))
            .collect();
        let probe_mats = HELD_OUT
            .par_iter()
            .map(|&u| transfer_matrix(C64::new(u, 0.0), params))
            .collect();
        Self {
            nodes,
            node_mats,
            probe_mats,
        }
    }

    fn reconstruct(&self, v: &CVector, tol: f64) -> Result<(Polynomial, f64)> {
        let pairs: Vec<(C64, C64)> = self
            .nodes
            .iter()
            .zip(&self.node_mats)
            .map(|(&u, m)| (u, rayleigh(m, v)))
            .collect();
        let poly = Polynomial::interpolate(&pairs)?;
        // v^dag T(u) v is a polynomial for any v, so the held-out test also
        // measures how far v is from being an eigenvector of T(u).
        let v = v / C64::new(v.norm(), 0.0);
        let residual = HELD_OUT
            .iter()
            .zip(&self.probe_mats)
            .map(|(&u, m)| {
                let predicted = poly.eval(C64::new(u, 0.0));
                let scale = max_abs(m);
                let value_gap = (rayleigh(m, &v) - predicted).norm() / scale;
                let vector_gap = sup_norm(&(m * &v - &v * predicted)) / scale;
                value_gap.max(vector_gap)
            })
            .fold(0.0, f64::max);
        if residual > tol || !residual.is_finite() {
            return Err(Error::Reconstruction { residual, tol });
        }
        Ok((poly, residual))
    }
}

/// Eigenvalue of `T(u)` on the joint eigenvector `v` as a polynomial of
/// degree `2N + 2`, with its held-out relative residual.
pub fn eigenvalue_polynomial(
    params: &ModelParams,
    v: &CVector,
    tol: f64,
) -> Result<(Polynomial, f64)> {
    Samples::new(params).reconstruct(v, tol)
}

pub fn compute_spectrum(params: &ModelParams) -> Result<SpectralData> {
    compute_spectrum_with(params, SpectrumOptions::default())
}

pub fn compute_spectrum_with(params: &ModelParams, opts: SpectrumOptions) -> Result<SpectralData> {
    let basis = joint_eigenbasis(params, opts.probe)?;
    let samples = Samples::new(params);
    let recon = basis
        .par_iter()
        .map(|je| samples.reconstruct(&je.vector, opts.recon_tol))
        .collect::<Result<Vec<_>>>()?;
    let (t_polys, recon_residuals) = recon.into_iter().unzip();
    Ok(SpectralData {
        params: *params,
        energies: basis.iter().map(|je| je.energy).collect(),
        eigenvectors: basis.into_iter().map(|je| je.vector).collect(),
        t_polys,
        recon_residuals,
    })
}

/// `max |T(u) v - (v^dag T(u) v) v|` for a unit vector `v`.
pub fn eigen_residual(t: &CMatrix, v: &CVector) -> f64 {
    let tv = t * v;
    let lambda = rayleigh(t, v);
    sup_norm(&(tv - v * lambda))
}
