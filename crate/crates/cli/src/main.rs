//! `ncfrft`: Newton-Cotes weight tables, FRFT self-tests and density
//! inversion runs from the command line.

mod run;
mod selftest;
mod weights;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncfrft::inversion::Scheme;

#[derive(Debug, Parser)]
#[command(name = "ncfrft", version, about = "Composite Newton-Cotes FRFT density inversion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print exact Newton-Cotes weights, optionally the composite vector.
    Weights(WeightsArgs),
    /// Run the quadrature, FRFT and inversion invariant checks.
    Selftest(SelftestArgs),
    /// Invert a model's Fourier transform with one or more schemes.
    Invert(RunArgs),
    /// Compare schemes, optionally across several orders Q.
    Compare(RunArgs),
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Rule order Q.
    #[arg(long)]
    pub q: usize,
    /// Number of panels; prints the flattened composite vector.
    #[arg(long)]
    pub n: Option<usize>,
    /// Write `Q,j,numerator,denominator,float` rows to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Perturb the float weights by 1e-6 to check that the suite notices.
    #[arg(long)]
    pub inject_fault: bool,
    /// Override the tolerance of every floating-point check.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Preset name (vg, vg-star, gts, gts-star) or path to a JSON parameter file.
    #[arg(long, default_value = "vg-star")]
    pub model: String,
    /// Rule order; `compare` accepts a comma-separated list.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub q: Vec<usize>,
    /// Panels per grid.
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    /// Frequency span: the transform is sampled on [-a/2, a/2].
    #[arg(long, default_value_t = 100.0)]
    pub a: f64,
    /// Width of the output window, centred on zero.
    #[arg(long, default_value_t = 40.0)]
    pub span: f64,
    /// Fractional output shift in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    pub s: f64,
    /// Comma-separated schemes.
    #[arg(long, value_delimiter = ',')]
    pub schemes: Option<Vec<Scheme>>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 2 when a pairwise difference exceeds this fraction
    /// of the peak.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Use the quadrature oracle as reference for models without a closed form.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad input: arguments, parameter files, grids.
    Validation(String),
    /// A numerical check missed its tolerance.
    Tolerance(String),
}

impl From<ncfrft::Error> for Failure {
    fn from(e: ncfrft::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Validation(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Weights(args) => weights::run(&args),
        Command::Selftest(args) => selftest::run(&args),
        Command::Invert(args) => run::invert(&args),
        Command::Compare(args) => run::compare(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Tolerance(msg)) => {
            eprintln!("tolerance failure: {msg}");
            ExitCode::from(2)
        }
    }
}
