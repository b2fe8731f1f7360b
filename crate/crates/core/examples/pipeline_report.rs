//! Runs the full pipeline for one parameter point and writes the JSON
//! report, to stdout or to the path given as the first argument.
//!
//! cargo run --example pipeline_report -- report.json

use std::fs::File;
use std::io::{self, Write};

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::pipeline::{run_pipeline, write_report, OutputFormat, RunConfig};
use xxx_wronskian::Result;

fn main() -> Result<()> {
    let cfg = RunConfig::new(ModelParams::new(3, -0.9, 0.6, 1.1)?);
    let report = run_pipeline(&cfg)?;
    let out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    write_report(&report, OutputFormat::Json, out)?;
    let global = report.global.as_ref();
    eprintln!(
        "passed: {}  ({} eigenvalues, commutativity {:.1e}, total {:.1} ms)",
        report.passed,
        report.eigenvalues.len(),
        global.map_or(f64::NAN, |g| g.commutativity_defect),
        report.timings.total_ms
    );
    Ok(())
}
