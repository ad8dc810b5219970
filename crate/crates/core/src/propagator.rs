//! Schrödinger propagation for the reduced two-level problems and the full
//! 2^N system, with a self-verifying convergence contract.
//!
//! Every propagation is re-run with tightened tolerances and a halved step
//! bound until the final amplitudes move by no more than the requested
//! `tol` between consecutive rounds; the last (finest) round is returned.
//! That makes the result a converged reference rather than a single-shot
//! integration at some nominal tolerance.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::integrate::{DormandPrince, IntegrateError, IntegratorParams, StepStats};
use crate::model::{ChainModel, ModelError, StateVector};
use crate::subspace::{PairMember, SubspacePair, TwoLevelProblem};

/// Requested-tolerance bounds for propagation.
pub const TOL_MIN: f64 = 1e-13;
pub const TOL_MAX: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SAMPLES: usize = 2001;

/// Per-sample norm deviation beyond which a run is rejected as non-unitary.
pub const NORM_DRIFT_LIMIT: f64 = 1e-9;

const MAX_ROUNDS: u32 = 8;
const RTOL_FLOOR: f64 = 5e-15;
const ATOL_FLOOR: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PropagateError {
    #[error("tolerance {tol:e} outside [{TOL_MIN:e}, {TOL_MAX:e}]")]
    InvalidTolerance { tol: f64 },
    #[error("need at least 2 output samples, got {n_samples}")]
    InvalidSamples { n_samples: usize },
    #[error("refinement stalled: final amplitudes still move by {best_diff:e} > tol {tol:e}")]
    NoConvergence { best_diff: f64, tol: f64 },
    #[error("norm drifted by {drift:e} (limit {NORM_DRIFT_LIMIT:e}); integration not unitary")]
    UnitarityLoss { drift: f64 },
    #[error("target index {index} out of range for trajectory of dimension {dim}")]
    TargetOutOfRange { index: usize, dim: usize },
    #[error("pair-member target needs a reduced trajectory")]
    MemberNeedsReducedRun,
    #[error("trajectories not comparable: {0}")]
    NotComparable(String),
    #[error(transparent)]
    Integrate(#[from] IntegrateError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Step bookkeeping of the accepted (finest) round, plus how many
/// refinement rounds the convergence contract consumed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IntegrationStats {
    pub accepted: u64,
    pub rejected: u64,
    pub rhs_evals: u64,
    pub refinement_rounds: u32,
    /// How far the final amplitudes moved in the last refinement round.
    pub converged_diff: f64,
    pub max_norm_drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryKind {
    /// Two amplitudes per sample: (representative, partner).
    Reduced { pair: SubspacePair },
    /// 2^N amplitudes per sample in the computational basis.
    Full { n_qubits: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub description: String,
    pub tol: f64,
    pub stats: IntegrationStats,
}

/// Sampled solution of one propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    kind: TrajectoryKind,
    taus: Vec<f64>,
    amplitudes: Vec<Vec<Complex64>>,
    meta: TrajectoryMeta,
}

impl TrajectoryRecord {
    pub fn kind(&self) -> &TrajectoryKind {
        &self.kind
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn n_samples(&self) -> usize {
        self.taus.len()
    }

    /// Amplitudes at sample `k` (2 entries for reduced runs, 2^N for full).
    pub fn sample(&self, k: usize) -> &[Complex64] {
        &self.amplitudes[k]
    }

    pub fn final_state(&self) -> &[Complex64] {
        self.amplitudes.last().expect("record holds at least 2 samples")
    }

    pub fn meta(&self) -> &TrajectoryMeta {
        &self.meta
    }

    fn slot_series(&self, slot: usize) -> Vec<(f64, f64)> {
        self.taus
            .iter()
            .zip(&self.amplitudes)
            .map(|(&tau, amps)| (tau, amps[slot].norm_sqr()))
            .collect()
    }
}

/// What to project on when extracting a probability curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Computational basis index (full runs) or pair index (reduced runs).
    Basis(usize),
    Member(PairMember),
}

/// P(tau) = |<target|psi(tau)>|^2 for every sample.
pub fn transition_probability(
    traj: &TrajectoryRecord,
    target: Target,
) -> Result<Vec<(f64, f64)>, PropagateError> {
    let slot = match (&traj.kind, target) {
        (TrajectoryKind::Reduced { .. }, Target::Member(PairMember::Representative)) => 0,
        (TrajectoryKind::Reduced { .. }, Target::Member(PairMember::Partner)) => 1,
        (TrajectoryKind::Reduced { pair }, Target::Basis(b)) => pair
            .slot_of(b)
            .ok_or(PropagateError::TargetOutOfRange { index: b, dim: 2 })?,
        (TrajectoryKind::Full { n_qubits }, Target::Basis(b)) => {
            let dim = 1usize << n_qubits;
            if b >= dim {
                return Err(PropagateError::TargetOutOfRange { index: b, dim });
            }
            b
        }
        (TrajectoryKind::Full { .. }, Target::Member(_)) => {
            return Err(PropagateError::MemberNeedsReducedRun)
        }
    };
    Ok(traj.slot_series(slot))
}

/// Integrate the reduced two-level problem from `tau_i` to `tau_f`,
/// starting in the given pair member.
pub fn propagate_two_level(
    problem: &TwoLevelProblem,
    initial: PairMember,
    tol: f64,
    n_samples: usize,
) -> Result<TrajectoryRecord, PropagateError> {
    let taus = sample_grid(problem.drive.window(), tol, n_samples)?;
    let y0 = match initial {
        PairMember::Representative => [Complex64::ONE, Complex64::ZERO],
        PairMember::Partner => [Complex64::ZERO, Complex64::ONE],
    };

    let inv = 1.0 / problem.energy_scale;
    let s = problem.detuning_sign;
    let c = problem.coupling * inv;
    let c_conj = c.conj();
    let (d_r, d_p) = (problem.diagonal_offset.0 * inv, problem.diagonal_offset.1 * inv);
    let drive = problem.drive;
    let m_i = Complex64::new(0.0, -1.0);
    let rhs = move |tau: f64, y: &[Complex64], dy: &mut [Complex64]| {
        let w = drive.value_unchecked(tau) * inv;
        dy[0] = m_i * (y[0] * (s * w + d_r) + y[1] * c_conj);
        dy[1] = m_i * (y[0] * c + y[1] * (-s * w + d_p));
    };

    let (amplitudes, stats) = refine_propagate(rhs, &y0, &taus, tol)?;
    let pair = problem.pair;
    Ok(TrajectoryRecord {
        kind: TrajectoryKind::Reduced { pair },
        taus,
        amplitudes,
        meta: TrajectoryMeta {
            description: format!(
                "reduced pair ({}, {}) of {} qubits",
                pair.representative(),
                pair.partner(),
                pair.n_qubits()
            ),
            tol,
            stats,
        },
    })
}

/// Integrate the full 2^N Schrödinger equation (the oracle path).
pub fn propagate_full(
    model: &ChainModel,
    initial: &StateVector,
    tol: f64,
    n_samples: usize,
) -> Result<TrajectoryRecord, PropagateError> {
    if initial.dim() != model.dim() {
        return Err(PropagateError::Model(ModelError::DimensionMismatch {
            got: initial.dim(),
            expected: model.dim(),
        }));
    }
    let taus = sample_grid(model.drive().window(), tol, n_samples)?;
    let scale = model.drive().energy_scale();
    let m_i_inv = Complex64::new(0.0, -1.0 / scale);
    let drive = *model.drive();
    let rhs = |tau: f64, y: &[Complex64], dy: &mut [Complex64]| {
        let w = drive.value_unchecked(tau);
        model.apply_with_detuning(w, y, dy);
        for d in dy.iter_mut() {
            *d *= m_i_inv;
        }
    };

    let (amplitudes, stats) = refine_propagate(rhs, initial.amplitudes(), &taus, tol)?;
    Ok(TrajectoryRecord {
        kind: TrajectoryKind::Full { n_qubits: model.n_qubits() },
        taus,
        amplitudes,
        meta: TrajectoryMeta {
            description: format!("full space, {} qubits", model.n_qubits()),
            tol,
            stats,
        },
    })
}

/// Largest per-component amplitude difference between a reduced run and a
/// full-space run of the same problem, over all samples (the reduced pair is
/// embedded into 2^N dimensions; every non-pair component of the full run
/// counts as deviation from zero).
pub fn max_amplitude_deviation(
    reduced: &TrajectoryRecord,
    full: &TrajectoryRecord,
) -> Result<f64, PropagateError> {
    let pair = match (&reduced.kind, &full.kind) {
        (TrajectoryKind::Reduced { pair }, TrajectoryKind::Full { n_qubits }) => {
            if pair.n_qubits() != *n_qubits {
                return Err(PropagateError::NotComparable(format!(
                    "pair is {}-qubit, full run is {}-qubit",
                    pair.n_qubits(),
                    n_qubits
                )));
            }
            *pair
        }
        _ => {
            return Err(PropagateError::NotComparable(
                "need one reduced and one full trajectory, in that order".into(),
            ))
        }
    };
    if reduced.taus != full.taus {
        return Err(PropagateError::NotComparable("sample grids differ".into()));
    }
    let mut max_dev: f64 = 0.0;
    for (r, f) in reduced.amplitudes.iter().zip(&full.amplitudes) {
        for (b, amp) in f.iter().enumerate() {
            let expected = match pair.slot_of(b) {
                Some(slot) => r[slot],
                None => Complex64::ZERO,
            };
            max_dev = max_dev.max((amp - expected).norm());
        }
    }
    Ok(max_dev)
}

/// Largest total population outside `pair` over all samples of a full run.
pub fn leakage_outside_pair(
    full: &TrajectoryRecord,
    pair: SubspacePair,
) -> Result<f64, PropagateError> {
    match &full.kind {
        TrajectoryKind::Full { n_qubits } if *n_qubits == pair.n_qubits() => {}
        _ => {
            return Err(PropagateError::NotComparable(
                "leakage needs a full run matching the pair's qubit count".into(),
            ))
        }
    }
    let mut worst: f64 = 0.0;
    for amps in &full.amplitudes {
        let outside: f64 = amps
            .iter()
            .enumerate()
            .filter(|(b, _)| pair.slot_of(*b).is_none())
            .map(|(_, a)| a.norm_sqr())
            .sum();
        worst = worst.max(outside);
    }
    Ok(worst)
}

fn sample_grid(
    window: (f64, f64),
    tol: f64,
    n_samples: usize,
) -> Result<Vec<f64>, PropagateError> {
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(PropagateError::InvalidTolerance { tol });
    }
    if n_samples < 2 {
        return Err(PropagateError::InvalidSamples { n_samples });
    }
    let (tau_i, tau_f) = window;
    let span = tau_f - tau_i;
    let mut taus: Vec<f64> = (0..n_samples)
        .map(|j| tau_i + span * (j as f64) / (n_samples as f64 - 1.0))
        .collect();
    *taus.last_mut().expect("n_samples >= 2") = tau_f;
    Ok(taus)
}

/// Run the integration ladder: round r uses tolerances tightened by 32^r and
/// a step bound halved r times. Accept once the final amplitudes of two
/// consecutive rounds agree within `tol`, returning the finer round.
fn refine_propagate<F>(
    mut rhs: F,
    y0: &[Complex64],
    taus: &[f64],
    tol: f64,
) -> Result<(Vec<Vec<Complex64>>, IntegrationStats), PropagateError>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let dim = y0.len();
    let span = taus[taus.len() - 1] - taus[0];
    let h0 = span / 64.0;
    let norm0 = y0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();

    let mut stepper = DormandPrince::new(dim);
    let mut previous_final: Option<Vec<Complex64>> = None;
    let mut best_diff = f64::INFINITY;

    for round in 0..MAX_ROUNDS {
        let shrink = 32f64.powi(round as i32);
        let rtol = (tol * 1e-2 / shrink).max(RTOL_FLOOR);
        let atol = (rtol * 1e-2).max(ATOL_FLOOR);
        let h_max = h0 / 2f64.powi(round as i32);
        let params = IntegratorParams::new(atol, rtol, h_max);

        let mut stats = StepStats::default();
        let mut y: Vec<Complex64> = y0.to_vec();
        let mut samples: Vec<Vec<Complex64>> = Vec::with_capacity(taus.len());
        samples.push(y.clone());
        stepper.reset();
        let mut max_norm_drift: f64 = 0.0;
        for seg in taus.windows(2) {
            stepper.integrate(&mut rhs, &mut y, seg[0], seg[1], &params, &mut stats)?;
            let norm = y.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            max_norm_drift = max_norm_drift.max((norm - norm0).abs());
            samples.push(y.clone());
        }

        if let Some(prev) = &previous_final {
            let diff = prev
                .iter()
                .zip(&y)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            best_diff = best_diff.min(diff);
            if diff <= tol {
                if max_norm_drift > NORM_DRIFT_LIMIT {
                    return Err(PropagateError::UnitarityLoss { drift: max_norm_drift });
                }
                let stats = IntegrationStats {
                    accepted: stats.accepted,
                    rejected: stats.rejected,
                    rhs_evals: stats.rhs_evals,
                    refinement_rounds: round,
                    converged_diff: diff,
                    max_norm_drift,
                };
                return Ok((samples, stats));
            }
        }
        previous_final = Some(y);
    }
    Err(PropagateError::NoConvergence { best_diff, tol })
}
