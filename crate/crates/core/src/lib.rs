//! Numerical workbench for the open XXX spin-1/2 chain with non-diagonal
//! boundary fields.
//!
//! The crate builds the transfer matrix of the chain, reconstructs its
//! eigenvalues `T(u)` as polynomials, solves the inhomogeneous TQ-equation
//! for `Q(u)` and its dual for `P(u)`, and checks the Wronskian-type
//! identity
//!
//! ```text
//! g(u) P(u + i/2) Q(u - i/2) - f(u) P(u - i/2) Q(u + i/2) = mu(u) u^{2N+1}
//! mu(u + i/2) - mu(u - i/2) = gamma u (Q(u) - P(u))
//! ```
//!
//! Modules, bottom up:
//!
//! - [`poly`]: complex polynomials, argument shifts, antidifference, roots.
//! - [`chain`]: R- and K-matrices, transfer matrix, Hamiltonian.
//! - [`spectrum`]: joint eigenbasis and eigenvalue polynomials.
//! - [`tq`]: least-squares solution of the TQ- and dual TQ-equations.
//! - [`wronskian`]: the identity, checked through two routes for `mu`.
//! - [`pipeline`]: batch runs, sweeps and JSON/CSV reports.
//!
//! ```no_run
//! use xxx_wronskian::{chain::ModelParams, pipeline::{run_pipeline, RunConfig}};
//!
//! let params = ModelParams::new(2, 0.7, 1.3, 0.75).unwrap();
//! let report = run_pipeline(&RunConfig::new(params)).unwrap();
//! assert!(report.passed);
//! ```

pub mod chain;
pub mod error;
pub mod pipeline;
pub mod poly;
pub mod spectrum;
pub mod tq;
pub mod wronskian;

pub use error::{Error, Result};
pub use poly::{Polynomial, C64};
