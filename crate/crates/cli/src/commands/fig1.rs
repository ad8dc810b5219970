//! fig1: the three reference curves as canned configs.
//!
//! a: adiabatic symmetric sweep (lambda = 2), b: symmetric half transition
//! (lambda = ln2/2pi), c: crossing-start ramp at lambda = 2. All presets use
//! gamma_x = 1 on a 4-spin chain unless --n overrides the size.

use crate::commands::simulate::{self, Report};
use crate::config::RunConfig;
use crate::error::AppError;
use clap::ValueEnum;
use ghz_chain::analytics::half_transition_lambda;
use ghz_chain::model::{ChainSpec, DriveProfile};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fig1Variant {
    A,
    B,
    C,
}

pub const DEFAULT_N: usize = 4;

pub fn preset_config(variant: Fig1Variant, n_qubits: usize) -> RunConfig {
    let drive = match variant {
        // lambda = gamma_x^2 / alpha with gamma_x = 1
        Fig1Variant::A => {
            DriveProfile::LinearSymmetric { alpha: 0.5, tau_i: -100.0, tau_f: 100.0 }
        }
        Fig1Variant::B => DriveProfile::LinearSymmetric {
            alpha: 1.0 / half_transition_lambda(),
            tau_i: -100.0,
            tau_f: 100.0,
        },
        Fig1Variant::C => {
            DriveProfile::LinearAsymmetric { alpha: 0.5, tau_i: 0.0, tau_f: 100.0 }
        }
    };
    RunConfig {
        chain: ChainSpec::new(n_qubits, 1.0),
        drive,
        initial: "-".repeat(n_qubits),
        tol: ghz_chain::propagator::DEFAULT_TOL,
        n_samples: ghz_chain::propagator::DEFAULT_SAMPLES,
        seed: 0,
        outputs: Default::default(),
    }
}

pub fn execute(
    variant: Fig1Variant,
    n_qubits: usize,
    tol: Option<f64>,
    samples: Option<usize>,
    out_dir: &Path,
) -> Result<Report, AppError> {
    let mut cfg = preset_config(variant, n_qubits);
    cfg.apply_overrides(tol, samples, None);
    simulate::execute(&cfg, out_dir)
}
