//! simulate: one reduced-pair run, emitted as trajectory.csv + report.json.

use crate::config::RunConfig;
use crate::error::AppError;
use crate::output::{csv_preamble, fmt_f, write_json, write_text};
use ghz_chain::analytics::{
    adiabaticity, lmsz_asymptotic_half_ramp, lmsz_asymptotic_symmetric, tail_average,
    Adiabaticity, DimensionlessParams, RampKind, TAIL_FRACTION,
};
use ghz_chain::ghz::{report_from_amplitudes, GhzReport};
use ghz_chain::model::{ChainModel, DriveProfile, StateVector};
use ghz_chain::propagator::{
    propagate_two_level, transition_probability, IntegrationStats, Target, TrajectoryRecord,
};
use ghz_chain::subspace::{effective_two_level, pair_of, PairMember};
use ghz_chain::TOOL_VERSION;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Closed-form asymptote the run is compared against (linear ramps only).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Reference {
    pub ramp_kind: RampKind,
    pub p_asymptotic: f64,
    /// tail_p - p_asymptotic
    pub tail_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub config_hash: String,
    pub n_qubits: usize,
    pub initial: String,
    /// The fully flipped partner the probability columns project on.
    pub target: String,
    pub lambda: Option<f64>,
    pub adiabaticity: Option<Adiabaticity>,
    pub final_p: f64,
    pub tail_p: f64,
    pub reference: Option<Reference>,
    pub ghz: GhzReport,
    pub integrator: IntegrationStats,
    pub tol: f64,
    pub n_samples: usize,
    pub seed: u64,
}

pub struct Computation {
    pub trajectory: TrajectoryRecord,
    pub p_target: Vec<(f64, f64)>,
    pub p_initial: Vec<(f64, f64)>,
    pub report: Report,
}

/// Run the reduced dynamics for a validated config, no files written.
pub fn compute(cfg: &RunConfig) -> Result<Computation, AppError> {
    cfg.validate()?;
    let model = ChainModel::new(cfg.chain, cfg.drive)?;
    let index = StateVector::from_bitstring(&cfg.initial)?
        .as_basis_index()
        .expect("bitstrings build basis states");
    let pair = pair_of(index, cfg.chain.n_qubits)?;
    let member = if index == pair.representative() {
        PairMember::Representative
    } else {
        PairMember::Partner
    };
    let other = match member {
        PairMember::Representative => PairMember::Partner,
        PairMember::Partner => PairMember::Representative,
    };

    let problem = effective_two_level(&model, pair)?;
    let trajectory = propagate_two_level(&problem, member, cfg.tol, cfg.n_samples)?;
    let p_target = transition_probability(&trajectory, Target::Member(other))?;
    let p_initial = transition_probability(&trajectory, Target::Member(member))?;

    let tail_p = tail_average(&p_target, TAIL_FRACTION);
    let final_p = p_target.last().expect("non-empty grid").1;
    let fs = trajectory.final_state();
    let ghz = report_from_amplitudes(fs[0], fs[1]);

    let lambda = problem.lambda();
    let ramp = ramp_kind(&cfg.drive);
    let reference = match (lambda, ramp) {
        (Some(l), Some(kind)) => {
            let params = DimensionlessParams::new(l, kind)?;
            let p_asymptotic = match kind {
                RampKind::Symmetric => lmsz_asymptotic_symmetric(&params)?,
                RampKind::Asymmetric => lmsz_asymptotic_half_ramp(&params)?,
            };
            Some(Reference { ramp_kind: kind, p_asymptotic, tail_deviation: tail_p - p_asymptotic })
        }
        _ => None,
    };
    let class = match (lambda, ramp) {
        (Some(l), Some(kind)) => Some(adiabaticity(&DimensionlessParams::new(l, kind)?).class),
        _ => None,
    };

    let report = Report {
        tool_version: TOOL_VERSION,
        config_hash: cfg.content_hash(),
        n_qubits: cfg.chain.n_qubits,
        initial: normalize_bitstring(&cfg.initial),
        target: flip_bitstring(&cfg.initial),
        lambda,
        adiabaticity: class,
        final_p,
        tail_p,
        reference,
        ghz,
        integrator: trajectory.meta().stats,
        tol: cfg.tol,
        n_samples: cfg.n_samples,
        seed: cfg.seed,
    };
    Ok(Computation { trajectory, p_target, p_initial, report })
}

/// Full simulate command: compute, then write both artifacts into `out_dir`.
pub fn execute(cfg: &RunConfig, out_dir: &Path) -> Result<Report, AppError> {
    let comp = compute(cfg)?;
    std::fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    let traj_path = join_out(out_dir, &cfg.outputs.trajectory);
    let report_path = join_out(out_dir, &cfg.outputs.report);
    write_text(&traj_path, &render_trajectory(&comp))?;
    write_json(&report_path, &comp.report)?;
    Ok(comp.report)
}

fn join_out(out_dir: &Path, name: &str) -> PathBuf {
    out_dir.join(name)
}

fn render_trajectory(comp: &Computation) -> String {
    let traj = &comp.trajectory;
    let mut text = csv_preamble(&comp.report.config_hash);
    text.push_str("tau,p_target,p_initial,re_a,im_a,re_b,im_b,norm\n");
    for k in 0..traj.n_samples() {
        let amps = traj.sample(k);
        let (a, b) = (amps[0], amps[1]);
        let row = [
            fmt_f(traj.taus()[k]),
            fmt_f(comp.p_target[k].1),
            fmt_f(comp.p_initial[k].1),
            fmt_f(a.re),
            fmt_f(a.im),
            fmt_f(b.re),
            fmt_f(b.im),
            fmt_f(a.norm_sqr() + b.norm_sqr()),
        ];
        text.push_str(&row.join(","));
        text.push('\n');
    }
    text
}

pub fn ramp_kind(drive: &DriveProfile) -> Option<RampKind> {
    match drive {
        DriveProfile::LinearSymmetric { .. } => Some(RampKind::Symmetric),
        DriveProfile::LinearAsymmetric { .. } => Some(RampKind::Asymmetric),
        _ => None,
    }
}

fn normalize_bitstring(s: &str) -> String {
    s.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect()
}

fn flip_bitstring(s: &str) -> String {
    s.chars().map(|c| if c == '+' { '-' } else { '+' }).collect()
}
