use indproc_core::analytics::{estimate_functional, msd_integral, msd_rate};
use indproc_core::models::{DelayDiffusionModel, DelayDiffusionParams, PathModel};
use indproc_core::montecarlo::ChunkExecutor;
use indproc_core::Complex64;
use serde::Deserialize;
use serde_json::json;

use super::{max_ratio, Outcome};
use crate::config::{ExperimentConfig, TimeGrid};
use crate::error::{param_error, CliError, Result};
use crate::report::{ResultRow, Series, SIGMA_TOLERANCE};

/// Tolerance on the long-time limit of the diffusion rate.
pub const LIMIT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Deserialize)]
struct Params {
    #[serde(default = "one")]
    b: f64,
    #[serde(default = "one")]
    mu1: f64,
    #[serde(default = "one")]
    mu2: f64,
}

fn one() -> f64 {
    1.0
}

pub(super) fn run<E: ChunkExecutor>(
    cfg: &ExperimentConfig,
    n_paths: u64,
    seed: u64,
    exec: &E,
) -> Result<Outcome> {
    cfg.reject_grid(false, true)?;
    let p: Params = cfg.params(&["b", "mu1", "mu2"])?;
    for (v, name) in [(p.mu1, "parameters.mu1"), (p.mu2, "parameters.mu2")] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::config(
                name,
                "the long-time limit needs a strictly positive rate",
            ));
        }
    }
    let times = cfg.times_or(TimeGrid::linspace(0.0, 2.0, 21))?;
    let model = DelayDiffusionModel::new(
        DelayDiffusionParams::product(p.mu1, p.mu2, p.b),
        *times.last().unwrap(),
    );
    model.validate().map_err(param_error)?;
    msd_rate(p.b, p.mu1, p.mu2, 0.0).map_err(param_error)?;

    let nt = times.len();
    let stats = estimate_functional(&model, &times, nt, n_paths, seed, exec, |state, out| {
        for (o, row) in out.iter_mut().zip(state.chunks_exact(2)) {
            *o = row[1] * row[1];
        }
    })?;

    let mut rows = Vec::with_capacity(nt);
    let mut msd_mc = Series::new("msd_mc");
    let mut msd_exact = Series::new("msd_analytic");
    let mut d_exact = Series::new("D_analytic");
    let mut d_mc = Series::new("D_empirical");
    for (k, &t) in times.iter().enumerate() {
        let analytic = msd_integral(p.b, p.mu1, p.mu2, t)?;
        msd_mc.push(t, stats.mean[k]);
        msd_exact.push(t, analytic);
        d_exact.push(t, msd_rate(p.b, p.mu1, p.mu2, t)?);
        rows.push(ResultRow {
            quantity: "msd".into(),
            t: Some(t),
            freq: Vec::new(),
            mean: Complex64::new(stats.mean[k], 0.0),
            stderr: stats.stderr[k],
            analytic: Complex64::new(analytic, 0.0),
        });
    }
    // dE[y²]/dt from neighbouring grid points, placed at interval midpoints
    for k in 1..nt {
        let dt = times[k] - times[k - 1];
        if dt > 0.0 {
            d_mc.push(
                0.5 * (times[k] + times[k - 1]),
                (stats.mean[k] - stats.mean[k - 1]) / dt,
            );
        }
    }

    let b2 = p.b * p.b;
    let d0 = msd_rate(p.b, p.mu1, p.mu2, 0.0)?;
    let t_limit = 100.0 / p.mu1.min(p.mu2);
    let d_limit = msd_rate(p.b, p.mu1, p.mu2, t_limit)?;
    let d0_ok = d0 == b2;
    let limit_ok = (d_limit - 0.75 * b2).abs() <= LIMIT_TOLERANCE;
    let max = max_ratio(&rows);
    let pass = max <= SIGMA_TOLERANCE && d0_ok && limit_ok;
    Ok(Outcome {
        summary: format!(
            "mean-square displacement with delay centers: max sigma ratio {max:.3}, D(0)=b^2 {}, D({t_limit})≈0.75b^2 {}",
            if d0_ok { "holds" } else { "fails" },
            if limit_ok { "holds" } else { "fails" },
        ),
        details: json!({
            "b": p.b,
            "mu1": p.mu1,
            "mu2": p.mu2,
            "D_at_0": d0,
            "D_at_0_equals_b2": d0_ok,
            "limit_time": t_limit,
            "D_at_limit_time": d_limit,
            "D_limit_error": (d_limit - 0.75 * b2).abs(),
            "D_limit_ok": limit_ok,
        }),
        rows,
        max_sigma_ratio: max,
        pass,
        series: vec![msd_mc, msd_exact, d_exact, d_mc],
    })
}
