//! Sweeps xi down to the diagonal point and prints the summary table as
//! CSV: the degree of mu drops to zero exactly at xi = 0.
//!
//! cargo run --example xi_sweep

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::pipeline::{
    run_sweep, write_sweep, OutputFormat, RunConfig, Sweep, SweepParameter,
};
use xxx_wronskian::Result;

fn main() -> Result<()> {
    let mut cfg = RunConfig::new(ModelParams::new(2, 0.7, 1.3, 0.75)?);
    cfg.sweep = Some(Sweep {
        parameter: SweepParameter::Xi,
        values: vec![0.0, 1e-3, 1e-2, 0.1, 0.75, 1.5],
    });
    let outcome = run_sweep(&cfg)?;
    write_sweep(&outcome, OutputFormat::Csv, std::io::stdout().lock())?;
    eprintln!("all passed: {}", outcome.passed());
    Ok(())
}
