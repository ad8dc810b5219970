//! bench: wall-time of the reduced pair propagation against the full
//! 2^N-dimensional oracle on the same problem, plus their deviation.

use crate::config::hash_of;
use crate::error::AppError;
use crate::output::{csv_preamble, fmt_f, write_text};
use ghz_chain::model::{ChainModel, ChainSpec, DriveProfile, StateVector};
use ghz_chain::propagator::{
    max_amplitude_deviation, propagate_full, propagate_two_level, TrajectoryRecord,
};
use ghz_chain::subspace::{effective_two_level, PairMember, SubspacePair};
use serde::Serialize;
use std::path::Path;
use std::time::Instant;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 201;

/// Fixed benchmark drive: lambda = 2 sweep on a short window, so the
/// full-space run stays tractable up to the 14-qubit cap.
fn bench_drive() -> DriveProfile {
    DriveProfile::LinearSymmetric { alpha: 0.5, tau_i: -10.0, tau_f: 10.0 }
}

#[derive(Serialize)]
struct Settings {
    n_list: Vec<usize>,
    reps: usize,
    tol: f64,
    n_samples: usize,
    drive: DriveProfile,
}

pub fn execute(
    n_list: &[usize],
    reps: usize,
    tol: f64,
    n_samples: usize,
    out_dir: &Path,
) -> Result<(), AppError> {
    if reps == 0 {
        return Err(AppError::Validation("reps: need at least one repetition".into()));
    }
    if n_list.is_empty() {
        return Err(AppError::Validation("n_list: need at least one size".into()));
    }
    let drive = bench_drive();
    for &n in n_list {
        // surfaces the qubit cap (and n >= 2) before any run starts
        ChainSpec::new(n, 1.0).validate()?;
    }
    let hash = hash_of(&Settings {
        n_list: n_list.to_vec(),
        reps,
        tol,
        n_samples,
        drive,
    });

    let mut csv = csv_preamble(&hash);
    csv.push_str("n,dim,reps,reduced_ms_min,full_ms_min,speedup,max_deviation\n");
    for &n in n_list {
        let model = ChainModel::new(ChainSpec::new(n, 1.0), drive)?;
        let pair = SubspacePair::ghz_pair(n)?;
        let problem = effective_two_level(&model, pair)?;
        let initial = StateVector::from_bitstring(&"-".repeat(n))?;

        let mut reduced: Option<TrajectoryRecord> = None;
        let mut reduced_ms = f64::INFINITY;
        for _ in 0..reps {
            let start = Instant::now();
            let traj =
                propagate_two_level(&problem, PairMember::Representative, tol, n_samples)?;
            reduced_ms = reduced_ms.min(start.elapsed().as_secs_f64() * 1e3);
            reduced = Some(traj);
        }
        let mut full: Option<TrajectoryRecord> = None;
        let mut full_ms = f64::INFINITY;
        for _ in 0..reps {
            let start = Instant::now();
            let traj = propagate_full(&model, &initial, tol, n_samples)?;
            full_ms = full_ms.min(start.elapsed().as_secs_f64() * 1e3);
            full = Some(traj);
        }

        let reduced = reduced.expect("reps >= 1");
        let full = full.expect("reps >= 1");
        let deviation = max_amplitude_deviation(&reduced, &full)?;
        let row = [
            n.to_string(),
            (1usize << n).to_string(),
            reps.to_string(),
            format!("{reduced_ms:.3}"),
            format!("{full_ms:.3}"),
            format!("{:.2}", full_ms / reduced_ms),
            fmt_f(deviation),
        ];
        csv.push_str(&row.join(","));
        csv.push('\n');
    }

    std::fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    write_text(&out_dir.join("bench.csv"), &csv)
}
