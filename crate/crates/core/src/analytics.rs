//! Closed-form sweep asymptotics, adiabaticity classification, inverse
//! pulse design, and dimensionful duration estimates.
//!
//! The two asymptotic formulas are
//!
//! ```text
//! symmetric ramp:   P = 1 - exp(-2 pi L)       (full range 0..1)
//! half ramp:        P = (1 - exp(-pi L)) / 2   (saturates at 1/2)
//! ```
//!
//! with L the dimensionless adiabaticity parameter gamma^2 / alpha. The
//! symmetric ramp crosses P = 1/2 at exactly L = ln2 / 2pi. The half-ramp
//! exponent is half the symmetric one — a sweep that starts exactly at the
//! crossing covers one side of it — and the closed form agrees with the
//! converged numerics in this workspace to a few 1e-4 over L in [0.05, 3]
//! (finite-window tail averaging accounts for the residual).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("lambda must be finite and >= 0, got {0}")]
    InvalidLambda(f64),
    #[error("formula for {expected:?} ramps called with {got:?}")]
    RampKindMismatch { expected: RampKind, got: RampKind },
    #[error("target probability {p_target} unreachable for {ramp_kind:?} ramp ({reason})")]
    UnreachableTarget { p_target: f64, ramp_kind: RampKind, reason: String },
    #[error("coupling must be finite and > 0, got {0}")]
    InvalidCoupling(f64),
    #[error("invalid hardware parameters: {0}")]
    InvalidHardware(String),
}

/// Which side of the crossing the ramp covers: Symmetric sweeps from far
/// below to far above; Asymmetric starts exactly at the crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RampKind {
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessParams {
    pub lambda: f64,
    pub ramp_kind: RampKind,
}

impl DimensionlessParams {
    pub fn new(lambda: f64, ramp_kind: RampKind) -> Result<Self, AnalyticsError> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(AnalyticsError::InvalidLambda(lambda));
        }
        Ok(Self { lambda, ramp_kind })
    }
}

/// Coupling quoted in Hz plus the dimensionless knobs, for converting a
/// design to physical time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardwareParams {
    /// gamma / (2 pi hbar), i.e. the coupling as an ordinary frequency.
    pub gamma_hz: f64,
    pub lambda: f64,
    /// Total dimensionless window length (tau_f - tau_i).
    pub tau_window: f64,
}

/// Asymptotic transition probability of the full symmetric sweep.
pub fn lmsz_asymptotic_symmetric(params: &DimensionlessParams) -> Result<f64, AnalyticsError> {
    expect_kind(params, RampKind::Symmetric)?;
    Ok(1.0 - (-2.0 * std::f64::consts::PI * params.lambda).exp())
}

/// Asymptotic transition probability of the half (crossing-start) ramp;
/// strictly below 1/2 for finite lambda.
pub fn lmsz_asymptotic_half_ramp(params: &DimensionlessParams) -> Result<f64, AnalyticsError> {
    expect_kind(params, RampKind::Asymmetric)?;
    Ok((1.0 - (-std::f64::consts::PI * params.lambda).exp()) / 2.0)
}

/// The lambda at which the symmetric sweep transfers exactly half the
/// population: ln2 / 2pi ~= 0.110318.
pub fn half_transition_lambda() -> f64 {
    std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI)
}

/// Invert the asymptotic formula: the ramp slope alpha that makes a sweep
/// with coupling `gamma` reach `p_target`.
///
/// Closed form: alpha = -2 pi gamma^2 / ln(1 - p) for the symmetric ramp,
/// alpha = -pi gamma^2 / ln(1 - 2p) for the half ramp.
pub fn solve_slope_for_probability(
    gamma: f64,
    p_target: f64,
    ramp_kind: RampKind,
) -> Result<f64, AnalyticsError> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(AnalyticsError::InvalidCoupling(gamma));
    }
    let unreachable = |reason: &str| AnalyticsError::UnreachableTarget {
        p_target,
        ramp_kind,
        reason: reason.into(),
    };
    if !p_target.is_finite() || p_target <= 0.0 {
        return Err(unreachable("probability must be strictly positive"));
    }
    match ramp_kind {
        RampKind::Symmetric => {
            if p_target >= 1.0 {
                return Err(unreachable("symmetric asymptote is strictly below 1"));
            }
            Ok(-2.0 * std::f64::consts::PI * gamma * gamma / (1.0 - p_target).ln())
        }
        RampKind::Asymmetric => {
            if p_target >= 0.5 {
                return Err(unreachable("half-ramp asymptote is strictly below 1/2"));
            }
            Ok(-std::f64::consts::PI * gamma * gamma / (1.0 - 2.0 * p_target).ln())
        }
    }
}

/// Adiabaticity classes with the thresholds used by this toolkit:
/// lambda >= 1 is adiabatic, lambda <= 0.25 is non-adiabatic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Adiabaticity {
    Adiabatic,
    Intermediate,
    NonAdiabatic,
}

pub const ADIABATIC_THRESHOLD: f64 = 1.0;
pub const NON_ADIABATIC_THRESHOLD: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdiabaticityReport {
    pub class: Adiabaticity,
    pub lambda: f64,
}

/// Classify a sweep by its lambda (the thresholds are conventions of this
/// toolkit, reported alongside the raw value).
pub fn adiabaticity(params: &DimensionlessParams) -> AdiabaticityReport {
    let class = if params.lambda >= ADIABATIC_THRESHOLD {
        Adiabaticity::Adiabatic
    } else if params.lambda <= NON_ADIABATIC_THRESHOLD {
        Adiabaticity::NonAdiabatic
    } else {
        Adiabaticity::Intermediate
    };
    AdiabaticityReport { class, lambda: params.lambda }
}

/// Physical-time estimate for a designed sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DurationEstimate {
    /// Ramp slope in s^-2, from alpha = (2 pi gamma_hz)^2 / lambda.
    pub alpha_per_s2: f64,
    /// tau_window * sqrt(1 / alpha), in seconds.
    pub duration_s: f64,
}

/// Convert a dimensionless window to seconds using the angular-frequency
/// convention gamma / hbar = 2 pi gamma_hz.
pub fn estimate_duration(hw: &HardwareParams) -> Result<DurationEstimate, AnalyticsError> {
    if !hw.gamma_hz.is_finite() || hw.gamma_hz <= 0.0 {
        return Err(AnalyticsError::InvalidHardware(format!(
            "gamma_hz must be > 0, got {}",
            hw.gamma_hz
        )));
    }
    if !hw.lambda.is_finite() || hw.lambda <= 0.0 {
        return Err(AnalyticsError::InvalidHardware(format!(
            "lambda must be > 0, got {}",
            hw.lambda
        )));
    }
    if !hw.tau_window.is_finite() || hw.tau_window <= 0.0 {
        return Err(AnalyticsError::InvalidHardware(format!(
            "tau_window must be > 0, got {}",
            hw.tau_window
        )));
    }
    let omega = 2.0 * std::f64::consts::PI * hw.gamma_hz;
    let alpha = omega * omega / hw.lambda;
    Ok(DurationEstimate { alpha_per_s2: alpha, duration_s: hw.tau_window / alpha.sqrt() })
}

/// Mean of the probability over the final `fraction` of the window — the
/// estimator used for asymptotic values, averaging out the finite-time
/// interference oscillations.
pub fn tail_average(series: &[(f64, f64)], fraction: f64) -> f64 {
    let tail = tail_slice(series, fraction);
    tail.iter().map(|&(_, p)| p).sum::<f64>() / tail.len() as f64
}

/// Peak-to-peak spread of the probability over the final `fraction` of the
/// window (the oscillation amplitude diagnostic).
pub fn tail_peak_to_peak(series: &[(f64, f64)], fraction: f64) -> f64 {
    let tail = tail_slice(series, fraction);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(_, p) in tail {
        lo = lo.min(p);
        hi = hi.max(p);
    }
    hi - lo
}

/// Default tail fraction used by the reports.
pub const TAIL_FRACTION: f64 = 0.1;

fn tail_slice(series: &[(f64, f64)], fraction: f64) -> &[(f64, f64)] {
    assert!(!series.is_empty(), "empty probability series");
    assert!(fraction > 0.0 && fraction <= 1.0, "tail fraction in (0, 1]");
    let (tau_first, _) = series[0];
    let (tau_last, _) = series[series.len() - 1];
    let cut = tau_last - (tau_last - tau_first) * fraction;
    let start = series.partition_point(|&(tau, _)| tau < cut);
    &series[start.min(series.len() - 1)..]
}

fn expect_kind(params: &DimensionlessParams, expected: RampKind) -> Result<(), AnalyticsError> {
    if !params.lambda.is_finite() || params.lambda < 0.0 {
        return Err(AnalyticsError::InvalidLambda(params.lambda));
    }
    if params.ramp_kind != expected {
        return Err(AnalyticsError::RampKindMismatch { expected, got: params.ramp_kind });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(lambda: f64) -> DimensionlessParams {
        DimensionlessParams::new(lambda, RampKind::Symmetric).unwrap()
    }

    fn asym(lambda: f64) -> DimensionlessParams {
        DimensionlessParams::new(lambda, RampKind::Asymmetric).unwrap()
    }

    #[test]
    fn symmetric_asymptote_values() {
        assert_eq!(lmsz_asymptotic_symmetric(&sym(0.0)).unwrap(), 0.0);
        let p = lmsz_asymptotic_symmetric(&sym(2.0)).unwrap();
        assert!((p - 0.9999965).abs() < 5e-7);
        let p_half = lmsz_asymptotic_symmetric(&sym(half_transition_lambda())).unwrap();
        assert!((p_half - 0.5).abs() < 1e-15);
    }

    #[test]
    fn half_ramp_asymptote_values() {
        assert_eq!(lmsz_asymptotic_half_ramp(&asym(0.0)).unwrap(), 0.0);
        let p = lmsz_asymptotic_half_ramp(&asym(1.0)).unwrap();
        assert!((p - 0.478393).abs() < 1e-6);
        let p = lmsz_asymptotic_half_ramp(&asym(2.0)).unwrap();
        assert!((p - 0.499066).abs() < 1e-6);
        let p_big = lmsz_asymptotic_half_ramp(&asym(6.0)).unwrap();
        assert!(p_big < 0.5 && p_big > 0.4999);
    }

    #[test]
    fn half_transition_constant() {
        let l = half_transition_lambda();
        assert!((l - 0.110318).abs() < 5e-7);
        assert!((2.0 * std::f64::consts::PI * l - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn ramp_kind_is_enforced() {
        assert!(matches!(
            lmsz_asymptotic_symmetric(&asym(1.0)),
            Err(AnalyticsError::RampKindMismatch { .. })
        ));
        assert!(matches!(
            lmsz_asymptotic_half_ramp(&sym(1.0)),
            Err(AnalyticsError::RampKindMismatch { .. })
        ));
    }

    #[test]
    fn monotone_in_lambda() {
        let grid: Vec<f64> = (0..200).map(|k| 0.02 * k as f64).collect();
        for w in grid.windows(2) {
            assert!(
                lmsz_asymptotic_symmetric(&sym(w[1])).unwrap()
                    > lmsz_asymptotic_symmetric(&sym(w[0])).unwrap()
            );
            assert!(
                lmsz_asymptotic_half_ramp(&asym(w[1])).unwrap()
                    > lmsz_asymptotic_half_ramp(&asym(w[0])).unwrap()
            );
        }
    }

    #[test]
    fn slope_inversion_examples() {
        let alpha = solve_slope_for_probability(1.0, 0.5, RampKind::Symmetric).unwrap();
        assert!((alpha - 2.0 * std::f64::consts::PI / std::f64::consts::LN_2).abs() < 1e-12);
        assert!((alpha - 9.0647).abs() < 1e-3);

        let p = (1.0 - (-2.0 * std::f64::consts::PI).exp()) / 2.0;
        let alpha = solve_slope_for_probability(1.0, p, RampKind::Asymmetric).unwrap();
        assert!((alpha - 0.5).abs() < 1e-12);

        let p = (1.0 - (-std::f64::consts::PI).exp()) / 2.0;
        let alpha = solve_slope_for_probability(1.0, p, RampKind::Asymmetric).unwrap();
        assert!((alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slope_inversion_round_trip() {
        // Log-spaced targets for both ramp kinds.
        for k in 1..40 {
            let p = 1.0 - 10f64.powf(-(k as f64) / 8.0);
            if p <= 0.0 {
                continue;
            }
            let gamma = 0.7;
            let alpha = solve_slope_for_probability(gamma, p, RampKind::Symmetric).unwrap();
            let lambda = gamma * gamma / alpha;
            let back = lmsz_asymptotic_symmetric(&sym(lambda)).unwrap();
            assert!((back - p).abs() < 1e-12, "p={p} back={back}");

            let p_half = p / 2.0;
            let alpha = solve_slope_for_probability(gamma, p_half, RampKind::Asymmetric).unwrap();
            let lambda = gamma * gamma / alpha;
            let back = lmsz_asymptotic_half_ramp(&asym(lambda)).unwrap();
            assert!((back - p_half).abs() < 1e-12);
        }
    }

    #[test]
    fn unreachable_targets() {
        assert!(matches!(
            solve_slope_for_probability(1.0, 0.6, RampKind::Asymmetric),
            Err(AnalyticsError::UnreachableTarget { .. })
        ));
        assert!(matches!(
            solve_slope_for_probability(1.0, 0.5, RampKind::Asymmetric),
            Err(AnalyticsError::UnreachableTarget { .. })
        ));
        assert!(matches!(
            solve_slope_for_probability(1.0, 1.0, RampKind::Symmetric),
            Err(AnalyticsError::UnreachableTarget { .. })
        ));
        assert!(matches!(
            solve_slope_for_probability(0.0, 0.3, RampKind::Symmetric),
            Err(AnalyticsError::InvalidCoupling(_))
        ));
    }

    #[test]
    fn adiabaticity_classes() {
        assert_eq!(adiabaticity(&sym(2.0)).class, Adiabaticity::Adiabatic);
        assert_eq!(adiabaticity(&sym(0.11)).class, Adiabaticity::NonAdiabatic);
        assert_eq!(adiabaticity(&sym(0.5)).class, Adiabaticity::Intermediate);
        assert_eq!(adiabaticity(&sym(1.0)).class, Adiabaticity::Adiabatic);
        assert_eq!(adiabaticity(&sym(0.25)).class, Adiabaticity::NonAdiabatic);
    }

    #[test]
    fn duration_examples() {
        let est = estimate_duration(&HardwareParams {
            gamma_hz: 1e6,
            lambda: half_transition_lambda(),
            tau_window: 200.0,
        })
        .unwrap();
        assert!((est.duration_s - 1.06e-5).abs() < 0.02e-5, "{}", est.duration_s);

        let est_khz = estimate_duration(&HardwareParams {
            gamma_hz: 1e3,
            lambda: half_transition_lambda(),
            tau_window: 200.0,
        })
        .unwrap();
        assert!((est_khz.duration_s / est.duration_s - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn duration_rejects_bad_inputs() {
        let bad = HardwareParams { gamma_hz: 1e6, lambda: 0.1, tau_window: 0.0 };
        assert!(matches!(estimate_duration(&bad), Err(AnalyticsError::InvalidHardware(_))));
        let bad = HardwareParams { gamma_hz: 0.0, lambda: 0.1, tau_window: 1.0 };
        assert!(matches!(estimate_duration(&bad), Err(AnalyticsError::InvalidHardware(_))));
    }

    #[test]
    fn tail_estimators() {
        // Constant 0.5 plus a decaying wiggle: the tail mean lands near 0.5
        // and the peak-to-peak is bounded by the wiggle size in the tail.
        let series: Vec<(f64, f64)> = (0..=1000)
            .map(|k| {
                let tau = k as f64 * 0.1;
                (tau, 0.5 + 0.01 * (tau * 3.0).sin() / (1.0 + tau))
            })
            .collect();
        let mean = tail_average(&series, 0.1);
        assert!((mean - 0.5).abs() < 2e-4);
        let pp = tail_peak_to_peak(&series, 0.1);
        assert!(pp > 0.0 && pp < 3e-4);
    }
}
