//! Command-line front end for the GHZ-chain toolkit: single runs, sweeps,
//! reference-curve presets, the reduced-vs-full benchmark, and pulse design.
//!
//! Outputs are flat files (CSV for curves, JSON for scalar reports), each
//! embedding the config hash and tool version. Exit codes: 0 success,
//! 2 validation, 3 numerical failure, 4 I/O.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};
use commands::design::{DesignTarget, RampArg};
use commands::fig1::Fig1Variant;
use config::{RunConfig, SweepConfig};
use error::AppError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ghz-chain", version, about = "GHZ-state sweep simulator and analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one sweep from a JSON config; writes trajectory.csv + report.json
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// override the config's convergence tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// override the config's sample count
        #[arg(long)]
        samples: Option<usize>,
        /// override the config's seed (recorded in the hash)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run one point per axis value; writes sweep.csv + manifest.json
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// run sweep points on this many threads (serial when omitted)
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Reproduce one of the three reference curves (a, b, c)
    Fig1 {
        variant: Fig1Variant,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// chain size for the preset
        #[arg(long, default_value_t = commands::fig1::DEFAULT_N)]
        n: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Time reduced-pair propagation against the full-space oracle
    Bench {
        /// comma-separated chain sizes, e.g. 2,4,8,12
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = commands::bench::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = commands::bench::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Solve for the ramp reaching a target transition; writes design.json
    Design {
        /// coupling as an ordinary frequency, Hz
        #[arg(long)]
        gamma_hz: f64,
        #[arg(long, value_enum)]
        target: DesignTarget,
        #[arg(long, value_enum)]
        ramp: RampArg,
        /// dimensionless window length tau_f - tau_i
        #[arg(long)]
        window: f64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// accept the documented epsilon shortfall when the exact target
        /// is unreachable
        #[arg(long)]
        approx: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Simulate { config, out, tol, samples, seed } => {
            let mut cfg = RunConfig::load(&config)?;
            cfg.apply_overrides(tol, samples, seed);
            let report = commands::simulate::execute(&cfg, &out)?;
            println!(
                "tail P = {:.6}, fidelity = {:.6} -> {}",
                report.tail_p,
                report.ghz.fidelity,
                out.display()
            );
            Ok(())
        }
        Command::Sweep { config, out, tol, samples, seed, parallel } => {
            let mut cfg = SweepConfig::load(&config)?;
            cfg.base.apply_overrides(tol, samples, seed);
            commands::sweep::execute(&cfg, parallel, &out)?;
            println!("{} points -> {}", cfg.values.len(), out.display());
            Ok(())
        }
        Command::Fig1 { variant, out, n, tol, samples } => {
            let report = commands::fig1::execute(variant, n, tol, samples, &out)?;
            match report.reference {
                Some(r) => println!(
                    "tail P = {:.6}, asymptote {:.6}, deviation {:+.2e} -> {}",
                    report.tail_p,
                    r.p_asymptotic,
                    r.tail_deviation,
                    out.display()
                ),
                None => println!("tail P = {:.6} -> {}", report.tail_p, out.display()),
            }
            Ok(())
        }
        Command::Bench { n_list, reps, out, tol, samples } => {
            commands::bench::execute(&n_list, reps, tol, samples, &out)?;
            println!("{} sizes -> {}", n_list.len(), out.display());
            Ok(())
        }
        Command::Design { gamma_hz, target, ramp, window, out, approx } => {
            let report = commands::design::execute(gamma_hz, target, ramp, window, approx, &out)?;
            println!(
                "lambda = {:.6}, duration = {:.3e} s, predicted P = {:.6} -> {}",
                report.lambda,
                report.duration_s,
                report.predicted_p,
                out.display()
            );
            if let Some(w) = report.warning {
                eprintln!("warning: {w}");
            }
            Ok(())
        }
    }
}
