use indproc_core::indicator::{expected_chi, parity_probability, DriverSpec, Parity, Phase};
use indproc_core::montecarlo::{run_paths, ChunkExecutor};
use indproc_core::Complex64;
use serde::Deserialize;
use serde_json::json;

use super::{max_ratio, Outcome};
use crate::config::{ExperimentConfig, TimeGrid};
use crate::error::{param_error, Result};
use crate::report::{ResultRow, Series, SIGMA_TOLERANCE};

#[derive(Debug, Deserialize)]
struct Params {
    #[serde(default = "one")]
    mu: f64,
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
    let p: Params = cfg.params(&["mu"])?;
    let times = cfg.times_or(TimeGrid::List(vec![0.5, 1.0, 2.0]))?;
    let driver = DriverSpec::poisson(p.mu);
    driver.validate().map_err(param_error)?;
    let horizon = *times.last().unwrap();

    let stats = run_paths(exec, n_paths, seed, times.len(), |rng, out| {
        let path = driver.sample(horizon, rng)?;
        for (o, &t) in out.iter_mut().zip(&times) {
            *o = if path.count_at(t)? % 2 == 0 { 1.0 } else { 0.0 };
        }
        Ok(())
    })?;

    let n = n_paths as f64;
    let mut rows = Vec::with_capacity(times.len());
    let mut mc = Series::new("p_even_mc");
    let mut exact = Series::new("p_even_analytic");
    let mut complement_ok = true;
    for (k, &t) in times.iter().enumerate() {
        let even = parity_probability(p.mu, t, Parity::Even)?;
        complement_ok &=
            expected_chi(p.mu, t, Phase::Plus)? + expected_chi(p.mu, t, Phase::Minus)? == 1.0;
        mc.push(t, stats.mean[k]);
        exact.push(t, even);
        rows.push(ResultRow {
            quantity: "P_even".into(),
            t: Some(t),
            freq: Vec::new(),
            mean: Complex64::new(stats.mean[k], 0.0),
            // binomial standard error at the analytic probability
            stderr: (even * (1.0 - even) / n).sqrt(),
            analytic: Complex64::new(even, 0.0),
        });
    }
    let max = max_ratio(&rows);
    Ok(Outcome {
        summary: format!(
            "even-count frequency at rate {}: max sigma ratio {max:.3}",
            p.mu
        ),
        details: json!({
            "mu": p.mu,
            "plus_minus_complement_exact": complement_ok,
        }),
        rows,
        max_sigma_ratio: max,
        pass: max <= SIGMA_TOLERANCE && complement_ok,
        series: vec![mc, exact],
    })
}
