//! `eigenform`: eigenform search and boundary diagnostics on fractal triples.

mod commands;
mod inputs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "eigenform",
    version,
    about = "Self-similar energies on finitely ramified fractals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command that evaluates the renormalization operator.
#[derive(Args, Debug, Clone)]
struct Common {
    /// Triple file, or `builtin:NAME`.
    triple: String,
    /// Comma-separated cell weights, one per cell.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    weights: Vec<f64>,
    /// Override a configuration value, e.g. `--set tol=1e-12`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock duration in the manifest (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a triple file against the structural conditions.
    Validate {
        /// Triple file, or `builtin:NAME`.
        triple: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an eigenform by normalized fixed-point iteration.
    Solve {
        #[command(flatten)]
        common: Common,
        /// `uniform`, a form file, or `coeffs:c1,c2,...`.
        #[arg(long, default_value = "uniform")]
        start: String,
    },
    /// Place a form in one of the strata D1..D4.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Form file, or `coeffs:c1,c2,...`; normalized before classification.
        #[arg(long)]
        form: String,
        /// Also re-evaluate the image at random weights drawn with this seed.
        #[arg(long, value_name = "SEED")]
        crosscheck: Option<u64>,
    },
    /// Check whether a degenerate eigenform is repulsing.
    Repulsing {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: String,
        /// Interior reference form; defaults to the barycenter.
        #[arg(long = "ref")]
        reference: Option<String>,
    },
    /// Sample interior forms near a boundary form and count outward-ray hits.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: String,
        #[arg(long = "ref")]
        reference: Option<String>,
        #[arg(long, default_value_t = 1e-2)]
        radius: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve over a geometric grid of weights; JSON lines, one per grid point.
    Sweep {
        /// Triple file, or `builtin:NAME`.
        triple: String,
        /// Per-cell `lo:hi:steps`, comma-separated.
        #[arg(long = "weights-grid")]
        grid: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include the per-iteration trajectory in every line.
        #[arg(long)]
        trajectory: bool,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Solve and, if the iteration degenerates, diagnose the boundary limit.
    Existence {
        #[command(flatten)]
        common: Common,
    },
    /// Print a builtin triple as a triple file, or list the builtins.
    Builtin { name: Option<String> },
}

fn init_logging() {
    let level = match std::env::var("EIGENFORM_LOG").as_deref() {
        Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        _ => log::LevelFilter::Warn,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    ExitCode::from(commands::run(cli.command))
}
