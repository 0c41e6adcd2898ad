//! `qmlbench`: run benchmark suites, generate synthetic datasets, and
//! validate config files.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 pipeline failure.
//! `QMLBENCH_THREADS` caps worker parallelism for the whole process.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qmlbench_cli::config::load_configs;
use qmlbench_cli::report::RenderFormat;
use qmlbench_cli::runner::run_suite;
use qmlbench_core::data::{generate_synthetic, SyntheticKind};

#[derive(Parser)]
#[command(
    name = "qmlbench",
    version,
    about = "Benchmark quantum and classical classifiers on tabular data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark suite from a JSON config file.
    Run {
        /// JSON config: one experiment object or an array of them.
        #[arg(long)]
        config: PathBuf,
        /// Also write the rendered report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report encoding.
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Generate a synthetic two-feature dataset CSV.
    Gen {
        /// Geometry of the two classes.
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Number of rows.
        #[arg(long, default_value_t = 300)]
        n: usize,
        /// Gaussian coordinate noise.
        #[arg(long, default_value_t = 0.1)]
        noise: f64,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a config file without running anything.
    Validate {
        /// JSON config to check.
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

impl From<Format> for RenderFormat {
    fn from(format: Format) -> Self {
        match format {
            Format::Json => RenderFormat::Json,
            Format::Markdown => RenderFormat::Markdown,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Blobs,
    Annulus,
}

impl From<GenKind> for SyntheticKind {
    fn from(kind: GenKind) -> Self {
        match kind {
            GenKind::Blobs => SyntheticKind::Blobs,
            GenKind::Annulus => SyntheticKind::Annulus,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    if let Err(message) = configure_threads() {
        eprintln!("{message}");
        return ExitCode::from(1);
    }
    match cli.command {
        Command::Run {
            config,
            out,
            format,
        } => run_command(&config, out.as_deref(), format.into()),
        Command::Gen {
            kind,
            n,
            noise,
            seed,
            out,
        } => gen_command(kind.into(), n, noise, seed, &out),
        Command::Validate { config } => validate_command(&config),
    }
}

/// Applies `QMLBENCH_THREADS` to the global worker pool before any
/// parallel work starts.
fn configure_threads() -> Result<(), String> {
    let value = match std::env::var("QMLBENCH_THREADS") {
        Ok(value) => value,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(err) => return Err(format!("error: cannot read QMLBENCH_THREADS: {err}")),
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            format!("error: QMLBENCH_THREADS must be a positive integer, got {value:?}")
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|err| format!("error: cannot configure thread pool: {err}"))
}

fn run_command(
    config: &std::path::Path,
    out: Option<&std::path::Path>,
    format: RenderFormat,
) -> ExitCode {
    let configs = match load_configs(config) {
        Ok(configs) => configs,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    };
    let outcome = match run_suite(&configs) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    };
    let text = outcome.report.render(format);
    print!("{text}");
    if let Some(path) = out {
        if let Err(err) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for failure in &outcome.failures {
            eprintln!(
                "experiment {} ({}) failed: {}",
                failure.index, failure.model, failure.error
            );
        }
        ExitCode::from(2)
    }
}

fn gen_command(
    kind: SyntheticKind,
    n: usize,
    noise: f64,
    seed: u64,
    out: &std::path::Path,
) -> ExitCode {
    let dataset = match generate_synthetic(kind, n, noise, seed) {
        Ok(dataset) => dataset,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    };
    if let Err(err) = dataset.save_csv(out, "label") {
        eprintln!("error: cannot write {}: {err}", out.display());
        return ExitCode::from(2);
    }
    println!("wrote {} rows to {}", dataset.num_rows(), out.display());
    ExitCode::SUCCESS
}

fn validate_command(config: &std::path::Path) -> ExitCode {
    match load_configs(config) {
        Ok(configs) => {
            println!("ok: {} experiment(s)", configs.len());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
