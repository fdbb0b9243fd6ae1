//! Command-line front end. Every subcommand emits a reproducible CSV or JSON
//! artifact: identical command, flags, and seed give byte-identical output.
//! Exit codes: 0 on success, 2 on usage errors, 3 on numeric or assertion
//! failures.

mod commands;
mod config;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;

#[derive(Parser)]
#[command(name = "icor", version, about = "Capacity bounds for the two-user interference channel with an oblivious receiver", max_term_width = 100)]
struct Cli {
    /// JSON config file with the RunConfig fields; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for the input-distribution optimizer.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Gauss-Hermite nodes per mixture component.
    #[arg(long, global = true)]
    gh_nodes: Option<usize>,

    /// Random restarts of the sum-rate optimizer.
    #[arg(long, global = true)]
    restarts: Option<usize>,

    /// Absolute quadrature tolerance, bits.
    #[arg(long, global = true)]
    quad_tol: Option<f64>,

    /// Slack added to the analytic gap bounds, bits.
    #[arg(long, global = true)]
    gap_tol: Option<f64>,

    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized sum-capacity curves against the interference exponent (CSV).
    Wcurve {
        /// Exponent grid, "start:stop:step".
        #[arg(long, default_value = "0:3:0.01")]
        alphas: String,
    },
    /// Deterministic-model sum rates: fair-coin baseline and optionally the
    /// optimized input distributions (JSON, plus a CSV row via --csv).
    Lda {
        /// Direct-link level count.
        #[arg(long)]
        ns: u32,
        /// Cross-link level count.
        #[arg(long)]
        ni: u32,
        /// Run the input-distribution optimizer.
        #[arg(long)]
        optimize: bool,
        /// Also write a one-row CSV with the normalized values.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Normalized sum rate of the sixth-root discrete input against time
    /// division and Gaussian inputs over an SNR sweep (CSV).
    Fig3 {
        /// SNR grid in dB, "start:stop:step".
        #[arg(long, default_value = "0:70:5")]
        snr_db: String,
        /// Interference exponent.
        #[arg(long, default_value_t = 4.0 / 3.0)]
        alpha: f64,
        /// Assert that the discrete input beats time division from 40 dB up.
        #[arg(long)]
        check: bool,
    },
    /// Inner and outer gDoF supports per direction (CSV); fails if they ever
    /// disagree.
    Gdof {
        /// Exponent grid, "start:stop:step".
        #[arg(long, default_value = "0:3:0.01")]
        alphas: String,
    },
    /// Constant-gap scan over an (SNR, alpha) grid (CSV plus JSON summary).
    GapScan {
        /// SNR grid in dB, "start:stop:step".
        #[arg(long, default_value = "0:80:2")]
        snr_db: String,
        /// Exponent grid, "start:stop:step".
        #[arg(long, default_value = "0:3:0.1")]
        alphas: String,
        /// Write the per-regime JSON summary here (default: stderr).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// A single rate region or sum rate as JSON.
    Region {
        /// Direct-link SNR in dB.
        #[arg(long)]
        snr_db: f64,
        /// Cross-link INR in dB.
        #[arg(long)]
        inr_db: f64,
        /// Which bound to evaluate.
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Constellation size; defaults to the built-in rule for the SNR.
        #[arg(long)]
        n: Option<u32>,
        /// Gaussian power share of transmitter 1 (mixed scheme only).
        #[arg(long, default_value_t = 0.0)]
        d1: f64,
        /// Private power share of transmitter 2 (mixed scheme only).
        #[arg(long, default_value_t = 0.0)]
        d2: f64,
    },
    /// Quick self-checks of the main numerical claims.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    /// PAM input at transmitter 1, Gaussian at transmitter 2.
    Pam,
    /// Mixed inputs with explicit power splits.
    Mixed,
    /// Symmetric mixed-input lower bound at the standard splits.
    MixedEtw,
    /// Classical full-knowledge outer bound.
    EtwOuter,
    /// Oblivious outer bound evaluated at Gaussian inputs.
    GaussOuter,
    /// Gaussian-input and time-division sum rates only.
    Gg,
}

/// Errors that decide the process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<icor_core::Error> for CliError {
    fn from(e: icor_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

fn init_thread_pool() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("ICOR_THREADS") {
        let n: usize = raw.parse().map_err(|_| {
            CliError::Usage(format!("ICOR_THREADS must be a positive integer, got {raw:?}"))
        })?;
        if n == 0 {
            return Err(CliError::Usage("ICOR_THREADS must be at least 1".into()));
        }
        // Ignore double initialization (only possible in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_thread_pool()?;
    let cfg = RunConfig::resolve(&cli)?;
    let out = output::Sink::new(cli.out.clone());
    match cli.command {
        Command::Wcurve { ref alphas } => commands::wcurve(&cfg, alphas, &out),
        Command::Lda {
            ns,
            ni,
            optimize,
            ref csv,
        } => commands::lda(&cfg, ns, ni, optimize, csv.as_deref(), &out),
        Command::Fig3 {
            ref snr_db,
            alpha,
            check,
        } => commands::fig3(&cfg, snr_db, alpha, check, &out),
        Command::Gdof { ref alphas } => commands::gdof(&cfg, alphas, &out),
        Command::GapScan {
            ref snr_db,
            ref alphas,
            ref summary,
        } => commands::gap_scan(&cfg, snr_db, alphas, summary.as_deref(), &out),
        Command::Region {
            snr_db,
            inr_db,
            scheme,
            n,
            d1,
            d2,
        } => commands::region(&cfg, snr_db, inr_db, scheme, n, d1, d2, &out),
        Command::Selftest => commands::selftest(&cfg, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
