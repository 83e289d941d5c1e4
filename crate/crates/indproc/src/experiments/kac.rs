use indproc_core::analytics::{estimate_charfn, kac_charfn};
use indproc_core::models::{KacModel, KacParams, PathModel};
use indproc_core::montecarlo::ChunkExecutor;
use serde::Deserialize;
use serde_json::json;

use super::{max_ratio, Outcome};
use crate::config::{ExperimentConfig, TimeGrid};
use crate::error::{param_error, Result};
use crate::report::{ResultRow, Series, SIGMA_TOLERANCE};

/// Share of cells that must fall within two standard errors.
pub const TWO_SIGMA_SHARE: f64 = 0.95;

#[derive(Debug, Deserialize)]
struct Params {
    #[serde(default = "one")]
    rate: f64,
    #[serde(default = "one")]
    speed: f64,
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
    let p: Params = cfg.params(&["rate", "speed"])?;
    let times = cfg.times_or(TimeGrid::linspace(0.0, 5.0, 11))?;
    let betas = cfg.scalar_freqs_or(&[0.5, 1.0, 2.0])?;
    let model = KacModel::new(
        KacParams {
            speed: p.speed,
            rate: p.rate,
        },
        *times.last().unwrap(),
    );
    model.validate().map_err(param_error)?;

    let freqs: Vec<Vec<f64>> = betas.iter().map(|&b| vec![b]).collect();
    let est = estimate_charfn(&model, &times, &freqs, n_paths, seed, exec)?;
    let mut rows = Vec::with_capacity(times.len() * betas.len());
    let mut series = Vec::new();
    for (fi, &beta) in betas.iter().enumerate() {
        let mut s = [
            Series::new(format!("re_mc[beta={beta}]")),
            Series::new(format!("im_mc[beta={beta}]")),
            Series::new(format!("re_analytic[beta={beta}]")),
            Series::new(format!("im_analytic[beta={beta}]")),
        ];
        for (ti, &t) in times.iter().enumerate() {
            let (mean, stderr) = est.cell(ti, fi);
            let analytic = kac_charfn(p.rate, p.speed, beta, t)?;
            for (series, v) in s
                .iter_mut()
                .zip([mean.re, mean.im, analytic.re, analytic.im])
            {
                series.push(t, v);
            }
            rows.push(ResultRow {
                quantity: "I".into(),
                t: Some(t),
                freq: vec![beta],
                mean,
                stderr,
                analytic,
            });
        }
        series.extend(s);
    }

    let max = max_ratio(&rows);
    let within2 = rows.iter().filter(|r| r.within(2.0)).count();
    let share = within2 as f64 / rows.len() as f64;
    let pass = max <= SIGMA_TOLERANCE && share >= TWO_SIGMA_SHARE;
    Ok(Outcome {
        summary: format!(
            "telegraph characteristic function: {} cells, max sigma ratio {max:.3}, {within2}/{} within 2 sigma",
            rows.len(),
            rows.len()
        ),
        details: json!({
            "rate": p.rate,
            "speed": p.speed,
            "within_2sigma": within2,
            "within_2sigma_share": share,
            "required_2sigma_share": TWO_SIGMA_SHARE,
        }),
        rows,
        max_sigma_ratio: max,
        pass,
        series,
    })
}
