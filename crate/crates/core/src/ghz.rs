//! GHZ-like targets and pair fidelity diagnostics.
//!
//! For a state confined to an invariant pair, the best GHZ-like overlap has
//! a closed form: with a = <rep|psi>, b = <partner|psi>, the fidelity
//! max_phi |<GHZ_phi|psi>|^2 equals (|a|^2 + |b|^2)/2 + |a||b|, attained at
//! phi* = arg(b) - arg(a). No numerical phase search is needed.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::model::{ModelError, StateVector, NORM_TOL};
use crate::subspace::SubspacePair;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GhzError {
    #[error("phi = {0} outside (-pi, pi]")]
    PhiOutOfRange(f64),
    #[error("state has {got} amplitudes but the pair lives in dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Populations, coherence, optimal phase, and fidelity of a state with
/// respect to one invariant pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GhzReport {
    pub p_rep: f64,
    pub p_partner: f64,
    /// |a||b|, the magnitude of the pair off-diagonal element.
    pub coherence_mag: f64,
    /// Optimal relative phase in (-pi, pi]; 0 by convention when degenerate.
    pub phi_star: f64,
    /// max over phi of |<GHZ_phi|psi>|^2.
    pub fidelity: f64,
    /// True when either amplitude vanishes and phi_star is meaningless.
    pub degenerate: bool,
}

/// (|rep> + e^{i phi} |partner>) / sqrt(2), embedded in 2^N dimensions.
pub fn ghz_like_target(pair: &SubspacePair, phi: f64) -> Result<StateVector, GhzError> {
    if !phi.is_finite() || phi <= -std::f64::consts::PI || phi > std::f64::consts::PI {
        return Err(GhzError::PhiOutOfRange(phi));
    }
    let dim = 1usize << pair.n_qubits();
    let mut amps = vec![Complex64::ZERO; dim];
    let w = std::f64::consts::FRAC_1_SQRT_2;
    amps[pair.representative()] = Complex64::new(w, 0.0);
    amps[pair.partner()] = Complex64::from_polar(w, phi);
    Ok(StateVector::from_amplitudes(amps)?)
}

/// Fidelity report for a full-dimension state against `pair`.
pub fn ghz_fidelity(psi: &StateVector, pair: &SubspacePair) -> Result<GhzReport, GhzError> {
    let expected = 1usize << pair.n_qubits();
    if psi.dim() != expected {
        return Err(GhzError::DimensionMismatch { got: psi.dim(), expected });
    }
    if (psi.norm_sqr() - 1.0).abs() > NORM_TOL {
        return Err(GhzError::Model(ModelError::NotNormalized {
            deviation: (psi.norm_sqr() - 1.0).abs(),
        }));
    }
    Ok(report_from_amplitudes(
        psi.amplitude(pair.representative()),
        psi.amplitude(pair.partner()),
    ))
}

/// Same report from the two pair amplitudes directly (the natural entry
/// point for reduced trajectories; no normalization is imposed, populations
/// are reported as given).
pub fn report_from_amplitudes(a: Complex64, b: Complex64) -> GhzReport {
    let p_rep = a.norm_sqr();
    let p_partner = b.norm_sqr();
    let coherence_mag = a.norm() * b.norm();
    let degenerate = p_rep == 0.0 || p_partner == 0.0;
    let phi_star = if degenerate { 0.0 } else { wrap_phase(b.arg() - a.arg()) };
    GhzReport {
        p_rep,
        p_partner,
        coherence_mag,
        phi_star,
        fidelity: (p_rep + p_partner) / 2.0 + coherence_mag,
        degenerate,
    }
}

/// Wrap an angle to (-pi, pi].
fn wrap_phase(x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut v = x % two_pi;
    if v <= -std::f64::consts::PI {
        v += two_pi;
    } else if v > std::f64::consts::PI {
        v -= two_pi;
    }
    v
}
