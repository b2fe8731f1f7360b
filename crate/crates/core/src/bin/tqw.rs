use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::pipeline::{
    run_pipeline, run_sweep, write_report, write_sweep, OutputFormat, RunConfig, Sweep,
    SweepParameter, DEFAULT_TOL,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Verify the TQ-equations and the Wronskian-type identity of the open XXX
/// chain with non-diagonal boundary fields.
///
/// Exits 0 iff every check passes. TQW_THREADS caps the worker threads.
#[derive(Debug, Parser)]
#[command(name = "tqw", version)]
struct Args {
    #[arg(long)]
    n_sites: usize,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    xi: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Comma-separated xi values; one run per value.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    sweep_xi: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> xxx_wronskian::Result<bool> {
    if let Some(threads) = std::env::var("TQW_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // only fails if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    let params = ModelParams::new(args.n_sites, args.alpha, args.beta, args.xi)?;
    let format = match args.format {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    let config = RunConfig {
        params,
        tol: args.tol,
        sweep: args.sweep_xi.map(|values| Sweep {
            parameter: SweepParameter::Xi,
            values,
        }),
        output_format: format,
        output_path: args.out,
    };
    let mut out: Box<dyn Write> = match &config.output_path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let passed = if config.sweep.is_some() {
        let outcome = run_sweep(&config)?;
        write_sweep(&outcome, format, &mut out)?;
        outcome.passed()
    } else {
        let report = run_pipeline(&config)?;
        write_report(&report, format, &mut out)?;
        report.passed
    };
    out.flush()?;
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("tqw: {e}");
            ExitCode::from(2)
        }
    }
}
