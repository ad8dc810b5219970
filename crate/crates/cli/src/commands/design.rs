//! design: pick the dimensionless working point for a requested transition,
//! then convert to physical slope and duration for a coupling quoted in Hz.

use crate::config::hash_of;
use crate::error::AppError;
use crate::output::write_json;
use ghz_chain::analytics::{
    estimate_duration, half_transition_lambda, lmsz_asymptotic_symmetric,
    solve_slope_for_probability, DimensionlessParams, HardwareParams, RampKind,
};
use ghz_chain::TOOL_VERSION;
use clap::ValueEnum;
use serde::Serialize;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignTarget {
    /// complete population transfer (lambda = 2 working point)
    Full,
    /// equal superposition, P = 1/2
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RampArg {
    Symmetric,
    Asymmetric,
}

/// Shortfall accepted for the crossing-start half transition when --approx
/// is passed: the design targets P = 1/2 - epsilon.
pub const HALF_RAMP_EPSILON: f64 = 1e-3;

#[derive(Serialize)]
struct Inputs {
    gamma_hz: f64,
    target: DesignTarget,
    ramp: RampArg,
    tau_window: f64,
    approx: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DesignReport {
    pub tool_version: &'static str,
    pub config_hash: String,
    pub target: DesignTarget,
    pub ramp_kind: RampKind,
    pub gamma_hz: f64,
    pub tau_window: f64,
    pub lambda: f64,
    pub alpha_per_s2: f64,
    pub duration_s: f64,
    pub predicted_p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

pub fn execute(
    gamma_hz: f64,
    target: DesignTarget,
    ramp: RampArg,
    tau_window: f64,
    approx: bool,
    out_dir: &Path,
) -> Result<DesignReport, AppError> {
    if !gamma_hz.is_finite() || gamma_hz <= 0.0 {
        return Err(AppError::Validation(format!("gamma_hz: must be > 0, got {gamma_hz}")));
    }
    let (lambda, predicted_p, epsilon, warning) = match (target, ramp) {
        (DesignTarget::Full, RampArg::Symmetric) => {
            let lambda = 2.0;
            let params = DimensionlessParams::new(lambda, RampKind::Symmetric)?;
            (lambda, lmsz_asymptotic_symmetric(&params)?, None, None)
        }
        (DesignTarget::Full, RampArg::Asymmetric) => {
            return Err(AppError::Validation(
                "target full: a crossing-start ramp saturates at P = 1/2; use --ramp symmetric"
                    .into(),
            ));
        }
        (DesignTarget::Half, RampArg::Symmetric) => {
            (half_transition_lambda(), 0.5, None, None)
        }
        (DesignTarget::Half, RampArg::Asymmetric) => {
            if !approx {
                return Err(AppError::Validation(format!(
                    "target half: P = 1/2 is the strict supremum of the crossing-start ramp; \
                     pass --approx to design for 1/2 - {HALF_RAMP_EPSILON:e}"
                )));
            }
            let p = 0.5 - HALF_RAMP_EPSILON;
            // gamma = 1 units: lambda = gamma^2 / alpha = 1 / alpha
            let alpha = solve_slope_for_probability(1.0, p, RampKind::Asymmetric)?;
            let warning = format!(
                "exact P = 1/2 is unreachable with a crossing-start ramp; \
                 designed for P = 1/2 - {HALF_RAMP_EPSILON:e} instead"
            );
            (1.0 / alpha, p, Some(HALF_RAMP_EPSILON), Some(warning))
        }
    };

    let est = estimate_duration(&HardwareParams { gamma_hz, lambda, tau_window })?;
    let report = DesignReport {
        tool_version: TOOL_VERSION,
        config_hash: hash_of(&Inputs { gamma_hz, target, ramp, tau_window, approx }),
        target,
        ramp_kind: match ramp {
            RampArg::Symmetric => RampKind::Symmetric,
            RampArg::Asymmetric => RampKind::Asymmetric,
        },
        gamma_hz,
        tau_window,
        lambda,
        alpha_per_s2: est.alpha_per_s2,
        duration_s: est.duration_s,
        predicted_p,
        epsilon,
        warning,
    };
    std::fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    write_json(&out_dir.join("design.json"), &report)?;
    Ok(report)
}
