//! sweep: one run per axis value, merged into sweep.csv + manifest.json in
//! axis order no matter how the points were scheduled.

use crate::commands::simulate;
use crate::config::{RunConfig, SweepAxis, SweepConfig};
use crate::error::AppError;
use crate::output::{csv_preamble, fmt_f, write_json, write_text};
use ghz_chain::TOOL_VERSION;
use rayon::prelude::*;
use serde::Serialize;
use std::path::Path;
use std::time::Instant;

struct PointOutcome {
    final_p: f64,
    tail_p: f64,
    p_analytic: Option<f64>,
    deviation: Option<f64>,
    fidelity: f64,
    wall_ms: f64,
}

#[derive(Serialize)]
struct ManifestRow {
    value: f64,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct Manifest {
    tool_version: &'static str,
    config_hash: String,
    axis: SweepAxis,
    values: Vec<f64>,
    rows: Vec<ManifestRow>,
}

pub fn execute(
    cfg: &SweepConfig,
    parallel: Option<usize>,
    out_dir: &Path,
) -> Result<(), AppError> {
    cfg.validate()?;
    let hash = cfg.content_hash();
    let points: Vec<RunConfig> =
        (0..cfg.values.len()).map(|k| cfg.point_config(k)).collect::<Result<_, _>>()?;

    let run_one = |pc: &RunConfig| -> Result<PointOutcome, AppError> {
        let start = Instant::now();
        let comp = simulate::compute(pc)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let r = &comp.report;
        Ok(PointOutcome {
            final_p: r.final_p,
            tail_p: r.tail_p,
            p_analytic: r.reference.map(|refr| refr.p_asymptotic),
            deviation: r.reference.map(|refr| refr.tail_deviation),
            fidelity: r.ghz.fidelity,
            wall_ms,
        })
    };

    let results: Vec<Result<PointOutcome, AppError>> = match parallel {
        Some(threads) => {
            if threads == 0 {
                return Err(AppError::Validation("parallel: thread count must be >= 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| AppError::Validation(format!("parallel: {e}")))?;
            pool.install(|| points.par_iter().map(run_one).collect())
        }
        None => points.iter().map(run_one).collect(),
    };

    std::fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;

    let mut csv = csv_preamble(&hash);
    csv.push_str("value,status,final_p,tail_p,p_analytic,deviation,fidelity,wall_ms\n");
    let mut manifest_rows = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for (value, result) in cfg.values.iter().zip(&results) {
        match result {
            Ok(p) => {
                let row = [
                    fmt_f(*value),
                    "ok".into(),
                    fmt_f(p.final_p),
                    fmt_f(p.tail_p),
                    fmt_f(p.p_analytic.unwrap_or(f64::NAN)),
                    fmt_f(p.deviation.unwrap_or(f64::NAN)),
                    fmt_f(p.fidelity),
                    format!("{:.3}", p.wall_ms),
                ];
                csv.push_str(&row.join(","));
                manifest_rows.push(ManifestRow {
                    value: *value,
                    status: "ok".into(),
                    error: None,
                });
            }
            Err(e) => {
                failures += 1;
                let row = [
                    fmt_f(*value),
                    "failed".into(),
                    "NaN".into(),
                    "NaN".into(),
                    "NaN".into(),
                    "NaN".into(),
                    "NaN".into(),
                    "NaN".into(),
                ];
                csv.push_str(&row.join(","));
                manifest_rows.push(ManifestRow {
                    value: *value,
                    status: "failed".into(),
                    error: Some(e.to_string()),
                });
            }
        }
        csv.push('\n');
    }

    write_text(&out_dir.join("sweep.csv"), &csv)?;
    write_json(
        &out_dir.join("manifest.json"),
        &Manifest {
            tool_version: TOOL_VERSION,
            config_hash: hash,
            axis: cfg.axis,
            values: cfg.values.clone(),
            rows: manifest_rows,
        },
    )?;

    if failures > 0 {
        return Err(AppError::Numerical(format!(
            "{failures} of {} sweep points failed (see manifest.json)",
            cfg.values.len()
        )));
    }
    Ok(())
}
