use indproc_core::mapping::{
    group_to_indicator, indicator_to_group, synthesize_and_verify, validate_group, Feasibility,
};
use indproc_core::montecarlo::ChunkExecutor;
use indproc_core::rng::{derive_path_rng, mix64, SeedSpec};
use indproc_core::Complex64;
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use super::{max_ratio, Outcome};
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::report::{ResultRow, EXACT_TOLERANCE, SIGMA_TOLERANCE};

#[derive(Debug, Deserialize)]
struct Params {
    #[serde(default = "default_p")]
    p: Vec<f64>,
    #[serde(default = "one")]
    horizon: f64,
    #[serde(default = "default_samples")]
    round_trip_samples: usize,
}

fn default_p() -> Vec<f64> {
    vec![0.2, 0.3, 0.5]
}

fn one() -> f64 {
    1.0
}

fn default_samples() -> usize {
    1000
}

/// Largest group↔indicator round-trip error over random strictly feasible
/// targets with 2 to 10 classes.
pub fn round_trip_error(samples: usize, seed: u64) -> Result<f64> {
    let mut rng = derive_path_rng(SeedSpec::new(mix64(seed), 0));
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let n = rng.random_range(2..=10);
        let q: Vec<f64> = (0..n - 1).map(|_| rng.random_range(0.0..0.5)).collect();
        let p = indicator_to_group(&q)?;
        let back = group_to_indicator(&p)?;
        let again = indicator_to_group(&back)?;
        for (a, b) in back.iter().zip(&q).chain(again.iter().zip(&p)) {
            worst = worst.max((a - b).abs());
        }
        if !validate_group(&p).passes() {
            worst = f64::INFINITY;
        }
    }
    Ok(worst)
}

pub(super) fn run<E: ChunkExecutor>(
    cfg: &ExperimentConfig,
    n_paths: u64,
    seed: u64,
    exec: &E,
) -> Result<Outcome> {
    cfg.reject_grid(true, true)?;
    let params: Params = cfg.params(&["p", "horizon", "round_trip_samples"])?;
    let validation = validate_group(&params.p);
    if !validation.passes() {
        let why = if !validation.range_ok {
            "probabilities must lie in [0, 1]".to_string()
        } else if !validation.sum_ok {
            "probabilities must sum to 1".to_string()
        } else {
            let hint = validation
                .suggested_order
                .as_ref()
                .map(|o| format!("; try the ascending order {o:?}"))
                .unwrap_or_default();
            format!(
                "targets are not strictly feasible ({:?}): each class needs less mass than all later classes together{hint}",
                validation.feasibility
            )
        };
        return Err(CliError::config("parameters.p", why));
    }
    if !(params.horizon > 0.0 && params.horizon.is_finite()) {
        return Err(CliError::config(
            "parameters.horizon",
            "must be finite and strictly positive",
        ));
    }

    let report = synthesize_and_verify(&params.p, params.horizon, n_paths, seed, exec)?;
    let rows: Vec<ResultRow> = (0..params.p.len())
        .map(|j| ResultRow {
            quantity: format!("class_{}", j + 1),
            t: Some(params.horizon),
            freq: Vec::new(),
            mean: Complex64::new(report.empirical[j], 0.0),
            stderr: report.stderr[j],
            analytic: Complex64::new(report.targets[j], 0.0),
        })
        .collect();
    let rt_error = round_trip_error(params.round_trip_samples, seed)?;
    let rt_ok = rt_error <= EXACT_TOLERANCE;
    let max = max_ratio(&rows);
    let pass = report.pass && max <= SIGMA_TOLERANCE && rt_ok;
    Ok(Outcome {
        summary: format!(
            "complete-group synthesis for {} classes: max sigma ratio {max:.3}, round-trip error {rt_error:.3e}",
            params.p.len()
        ),
        details: json!({
            "p": params.p,
            "horizon": params.horizon,
            "q": report.q,
            "a": report.a,
            "lambda": report.lambda,
            "empirical": report.empirical,
            "stderr": report.stderr,
            "validation": {
                "sum_ok": validation.sum_ok,
                "range_ok": validation.range_ok,
                "tail_ok": validation.tail_ok,
                "ranking_ok": validation.ranking_ok,
                "suggested_order": validation.suggested_order,
                "strict": validation.feasibility == Feasibility::Strict,
            },
            "round_trip_samples": params.round_trip_samples,
            "round_trip_max_error": if rt_error.is_finite() { json!(rt_error) } else { json!(null) },
            "round_trip_ok": rt_ok,
        }),
        rows,
        max_sigma_ratio: max,
        pass,
        series: Vec::new(),
    })
}
