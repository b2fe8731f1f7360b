//! Batch runner: model parameters in, machine-readable verification report
//! out.
//!
//! A run builds the chain, diagonalizes the commuting family, solves both
//! TQ-equations for every eigenvalue and checks the Wronskian-type identity.
//! Failures of individual eigenvalues are recorded in the report and never
//! abort the batch. Apart from the `timings` block, output is a
//! deterministic function of the configuration.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{self, ModelParams, MAX_SITES};
use crate::error::{Error, Result};
use crate::poly::C64;
use crate::spectrum::{compute_spectrum, SpectralData, HELD_OUT};
use crate::tq::{boundary_functions, BoundaryFunctions, TQSolution};
use crate::wronskian::{verify_identity, WronskianReport};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const COMMUTATIVITY_TOL: f64 = 1e-10;
pub const PARITY_TOL: f64 = 1e-11;
pub const HAMILTONIAN_TOL: f64 = 1e-6;
pub const DUALITY_TOL: f64 = 1e-11;
pub const TRACE_TOL: f64 = 1e-9;
pub const FD_STEP: f64 = 1e-5;

/// Fixed probe pairs for the commutativity check.
const COMMUTATOR_PROBES: [(C64, C64); 2] = [
    (C64::new(0.3, 0.0), C64::new(1.1, 0.0)),
    (C64::new(0.7, 0.2), C64::new(-0.45, 0.9)),
];
const PARITY_PROBES: [C64; 2] = [C64::new(0.83, 0.0), C64::new(0.4, 0.3)];
const DUALITY_PROBES: [C64; 2] = [C64::new(0.57, 0.21), C64::new(1.3, 0.0)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    Alpha,
    Beta,
    Xi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: ModelParams,
    pub tol: f64,
    pub sweep: Option<Sweep>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(params: ModelParams) -> Self {
        Self {
            params,
            tol: DEFAULT_TOL,
            sweep: None,
            output_format: OutputFormat::Json,
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tol must be a positive finite number, got {}",
                self.tol
            )));
        }
        if self.params.n_sites > MAX_SITES {
            return Err(Error::InvalidConfig(format!(
                "n_sites is capped at {MAX_SITES}"
            )));
        }
        if let Some(sweep) = &self.sweep {
            if let Some(v) = sweep.values.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "sweep value {v} is not finite"
                )));
            }
        }
        Ok(())
    }

    fn with_value(&self, parameter: SweepParameter, value: f64) -> Result<ModelParams> {
        let p = self.params;
        match parameter {
            SweepParameter::Alpha => ModelParams::new(p.n_sites, value, p.beta, p.xi),
            SweepParameter::Beta => ModelParams::new(p.n_sites, p.alpha, value, p.xi),
            SweepParameter::Xi => ModelParams::new(p.n_sites, p.alpha, p.beta, value),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConfigEcho {
    pub n_sites: usize,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub gamma: f64,
    pub root_term: f64,
    pub tol: f64,
}

impl ConfigEcho {
    fn new(params: &ModelParams, tol: f64) -> Self {
        Self {
            n_sites: params.n_sites,
            alpha: params.alpha,
            beta: params.beta,
            xi: params.xi,
            gamma: params.gamma(),
            root_term: params.root_term(),
            tol,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenChecks {
    pub reconstruction: bool,
    pub tq: bool,
    pub dual_tq: bool,
    pub identity: bool,
    /// Only meaningful for `xi == 0`, where `mu` must be constant; true otherwise.
    pub diagonal_constant_mu: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenRecord {
    pub index: usize,
    pub energy: f64,
    pub recon_residual: f64,
    pub solution: Option<TQSolution>,
    pub identity: Option<WronskianReport>,
    pub checks: EigenChecks,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalChecks {
    pub commutativity_defect: f64,
    pub parity_defect: f64,
    pub hamiltonian_link_defect: f64,
    #[serde(with = "crate::tq::complex_list")]
    pub hamiltonian_link_coeffs: Vec<C64>,
    pub duality_defect: f64,
    pub trace_defect: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub spectrum_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: ConfigEcho,
    pub eigenvalues: Vec<EigenRecord>,
    pub global: Option<GlobalChecks>,
    pub passed: bool,
    pub error: Option<String>,
    /// Wall-clock only; excluded from the determinism guarantee.
    pub timings: Timings,
}

impl VerificationReport {
    fn failed(config: ConfigEcho, error: String) -> Self {
        Self {
            config,
            eigenvalues: Vec::new(),
            global: None,
            passed: false,
            error: Some(error),
            timings: Timings::default(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Copy with zeroed timings, for byte comparisons.
    pub fn without_timings(&self) -> Self {
        Self {
            timings: Timings::default(),
            ..self.clone()
        }
    }
}

fn global_checks(params: &ModelParams, spectrum: Option<&SpectralData>) -> GlobalChecks {
    let commutativity_defect = COMMUTATOR_PROBES
        .iter()
        .map(|&(u, v)| chain::commutativity_defect(params, u, v))
        .fold(0.0, f64::max);
    let parity_defect = PARITY_PROBES
        .iter()
        .map(|&u| chain::parity_defect(params, u))
        .fold(0.0, f64::max);
    let duality_defect = DUALITY_PROBES
        .iter()
        .map(|&u| chain::duality_defect(params, u))
        .fold(0.0, f64::max);
    let link = chain::hamiltonian_link(params, FD_STEP);
    let trace_defect = spectrum.map_or(f64::NAN, |s| spectral_trace_defect(params, s));
    let passed = commutativity_defect < COMMUTATIVITY_TOL
        && parity_defect < PARITY_TOL
        && link.defect < HAMILTONIAN_TOL
        && duality_defect < DUALITY_TOL
        && trace_defect < TRACE_TOL;
    GlobalChecks {
        commutativity_defect,
        parity_defect,
        hamiltonian_link_defect: link.defect,
        hamiltonian_link_coeffs: vec![link.scale, link.shift],
        duality_defect,
        trace_defect,
        passed,
    }
}

/// `max_u |sum_k t_k(u) - tr T(u)| / |tr T(u)|` over the held-out probes.
pub fn spectral_trace_defect(params: &ModelParams, spectrum: &SpectralData) -> f64 {
    HELD_OUT
        .iter()
        .map(|&x| {
            let u = C64::new(x, 0.0);
            let trace = chain::transfer_matrix(u, params).trace();
            let sum: C64 = spectrum.t_polys.iter().map(|t| t.eval(u)).sum();
            (sum - trace).norm() / trace.norm().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

fn eigen_record(
    index: usize,
    spectrum: &SpectralData,
    bf: &BoundaryFunctions,
    params: &ModelParams,
    tol: f64,
) -> EigenRecord {
    let t = &spectrum.t_polys[index];
    let recon_residual = spectrum.recon_residuals[index];
    let reconstruction = recon_residual < tol;
    match TQSolution::solve(t, bf, params.n_sites) {
        Ok(sol) => {
            let report = verify_identity(&sol, bf, params.n_sites, tol);
            let checks = EigenChecks {
                reconstruction,
                tq: sol.q_residual < tol,
                dual_tq: sol.p_residual < tol,
                identity: report.passed,
                diagonal_constant_mu: params.xi != 0.0 || report.mu_degree.is_some_and(|d| d == 0),
            };
            let passed = checks.reconstruction
                && checks.tq
                && checks.dual_tq
                && checks.identity
                && checks.diagonal_constant_mu;
            EigenRecord {
                index,
                energy: spectrum.energies[index],
                recon_residual,
                solution: Some(sol),
                identity: Some(report),
                checks,
                passed,
                error: None,
            }
        }
        Err(e) => EigenRecord {
            index,
            energy: spectrum.energies[index],
            recon_residual,
            solution: None,
            identity: None,
            checks: EigenChecks {
                reconstruction,
                tq: false,
                dual_tq: false,
                identity: false,
                diagonal_constant_mu: false,
            },
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

fn run_params(params: &ModelParams, tol: f64) -> VerificationReport {
    let start = Instant::now();
    let echo = ConfigEcho::new(params, tol);
    let spectrum = match compute_spectrum(params) {
        Ok(s) => s,
        Err(e) => {
            let mut report = VerificationReport::failed(echo, e.to_string());
            report.global = Some(global_checks(params, None));
            report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
            return report;
        }
    };
    let spectrum_ms = start.elapsed().as_secs_f64() * 1e3;
    let bf = boundary_functions(params);
    let solve_start = Instant::now();
    let eigenvalues: Vec<EigenRecord> = (0..spectrum.len())
        .into_par_iter()
        .map(|i| eigen_record(i, &spectrum, &bf, params, tol))
        .collect();
    let solve_ms = solve_start.elapsed().as_secs_f64() * 1e3;
    let global = global_checks(params, Some(&spectrum));
    let passed = global.passed && eigenvalues.iter().all(|r| r.passed);
    VerificationReport {
        config: echo,
        eigenvalues,
        global: Some(global),
        passed,
        error: None,
        timings: Timings {
            spectrum_ms,
            solve_ms,
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    }
}

/// Full chain -> spectrum -> TQ -> identity run for the configured point.
pub fn run_pipeline(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    Ok(run_params(&config.params, config.tol))
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub passed: bool,
    pub max_q_residual: f64,
    pub max_p_residual: f64,
    pub max_divisibility_defect: f64,
    pub max_mu_match_defect: f64,
    pub max_relation_defect: f64,
    pub max_mu_degree: Option<usize>,
}

impl SweepRow {
    fn new(value: f64, report: &VerificationReport) -> Self {
        let max_of = |f: &dyn Fn(&EigenRecord) -> Option<f64>| {
            report
                .eigenvalues
                .iter()
                .map(|r| f(r).unwrap_or(f64::INFINITY))
                .fold(
                    if report.eigenvalues.is_empty() {
                        f64::NAN
                    } else {
                        0.0
                    },
                    f64::max,
                )
        };
        Self {
            value,
            passed: report.passed,
            max_q_residual: max_of(&|r| r.solution.as_ref().map(|s| s.q_residual)),
            max_p_residual: max_of(&|r| r.solution.as_ref().map(|s| s.p_residual)),
            max_divisibility_defect: max_of(&|r| {
                r.identity.as_ref().map(|w| w.divisibility_defect)
            }),
            max_mu_match_defect: max_of(&|r| r.identity.as_ref().map(|w| w.mu_match_defect)),
            max_relation_defect: max_of(&|r| r.identity.as_ref().map(|w| w.relation_defect)),
            max_mu_degree: report
                .eigenvalues
                .iter()
                .filter_map(|r| r.identity.as_ref().and_then(|w| w.mu_degree))
                .max(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOutcome {
    pub parameter: SweepParameter,
    pub reports: Vec<VerificationReport>,
    pub summary: Vec<SweepRow>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// One independent run per sweep value, in sweep order.
pub fn run_sweep(config: &RunConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("run_sweep needs a sweep".into()))?;
    if sweep.values.is_empty() {
        return Err(Error::InvalidConfig("sweep value list is empty".into()));
    }
    let reports: Vec<VerificationReport> = sweep
        .values
        .par_iter()
        .map(|&value| match config.with_value(sweep.parameter, value) {
            Ok(params) => run_params(&params, config.tol),
            Err(e) => {
                let mut echo = ConfigEcho::new(&config.params, config.tol);
                match sweep.parameter {
                    SweepParameter::Alpha => echo.alpha = value,
                    SweepParameter::Beta => echo.beta = value,
                    SweepParameter::Xi => echo.xi = value,
                }
                VerificationReport::failed(echo, e.to_string())
            }
        })
        .collect();
    let summary = sweep
        .values
        .iter()
        .zip(&reports)
        .map(|(&v, r)| SweepRow::new(v, r))
        .collect();
    Ok(SweepOutcome {
        parameter: sweep.parameter,
        reports,
        summary,
    })
}

#[derive(Serialize)]
struct EigenCsvRow {
    index: usize,
    energy: f64,
    recon_residual: f64,
    q_residual: Option<f64>,
    p_residual: Option<f64>,
    divisibility_defect: Option<f64>,
    mu_match_defect: Option<f64>,
    relation_defect: Option<f64>,
    mu_degree: Option<usize>,
    passed: bool,
    error: Option<String>,
}

/// Writes a single-run report in the requested format.
pub fn write_report<W: Write>(
    report: &VerificationReport,
    format: OutputFormat,
    mut out: W,
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &report.eigenvalues {
                w.serialize(EigenCsvRow {
                    index: r.index,
                    energy: r.energy,
                    recon_residual: r.recon_residual,
                    q_residual: r.solution.as_ref().map(|s| s.q_residual),
                    p_residual: r.solution.as_ref().map(|s| s.p_residual),
                    divisibility_defect: r.identity.as_ref().map(|i| i.divisibility_defect),
                    mu_match_defect: r.identity.as_ref().map(|i| i.mu_match_defect),
                    relation_defect: r.identity.as_ref().map(|i| i.relation_defect),
                    mu_degree: r.identity.as_ref().and_then(|i| i.mu_degree),
                    passed: r.passed,
                    error: r.error.clone(),
                })
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Writes a sweep: full JSON, or the summary table as CSV.
pub fn write_sweep<W: Write>(
    outcome: &SweepOutcome,
    format: OutputFormat,
    mut out: W,
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, outcome)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in &outcome.summary {
                w.serialize(row).map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_tol_rejected() {
        let mut cfg = RunConfig::new(ModelParams::new(1, 1.0, 1.0, 0.5).unwrap());
        cfg.tol = 0.0;
        assert!(matches!(run_pipeline(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn sweep_requires_values() {
        let mut cfg = RunConfig::new(ModelParams::new(1, 1.0, 1.0, 0.5).unwrap());
        assert!(run_sweep(&cfg).is_err());
        cfg.sweep = Some(Sweep {
            parameter: SweepParameter::Xi,
            values: vec![],
        });
        assert!(matches!(run_sweep(&cfg), Err(Error::InvalidConfig(_))));
        cfg.sweep = Some(Sweep {
            parameter: SweepParameter::Xi,
            values: vec![f64::NAN],
        });
        assert!(matches!(run_sweep(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn invalid_sweep_case_is_captured() {
        let mut cfg = RunConfig::new(ModelParams::new(1, 1.0, 1.0, 0.5).unwrap());
        cfg.sweep = Some(Sweep {
            parameter: SweepParameter::Beta,
            values: vec![0.0, 0.8],
        });
        let out = run_sweep(&cfg).unwrap();
        assert_eq!(out.reports.len(), 2);
        assert!(!out.reports[0].passed);
        assert!(out.reports[0]
            .error
            .as_deref()
            .unwrap()
            .contains("Hamiltonian"));
        assert!(out.reports[1].passed);
    }
}
