use indproc_core::analytics::mixture_charfn;
use indproc_core::indicator::build_group;
use indproc_core::math::cis;
use indproc_core::montecarlo::{run_paths, ChunkExecutor};
use indproc_core::Complex64;
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use super::{max_ratio, Outcome};
use crate::config::ExperimentConfig;
use crate::error::{param_error, CliError, Result};
use crate::report::{ResultRow, EXACT_TOLERANCE, SIGMA_TOLERANCE};

/// Largest number of indicators enumerated exhaustively.
pub const MAX_ENUMERATED: usize = 20;

#[derive(Debug, Deserialize)]
struct Params {
    #[serde(default = "default_p")]
    p: Vec<f64>,
    /// Deterministic value of each class; defaults to `1, 2, …, n`.
    components: Option<Vec<f64>>,
}

fn default_p() -> Vec<f64> {
    vec![0.2, 0.375]
}

/// `Σ φ_{class}` over all indicator configurations, weighted by their
/// probabilities.
pub fn enumerate_mixture(p: &[f64], phis: &[Complex64]) -> Result<Complex64> {
    let m = p.len();
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0u64..(1 << m) {
        let chi: Vec<u8> = (0..m).map(|j| ((mask >> j) & 1) as u8).collect();
        let weight: f64 = chi
            .iter()
            .zip(p)
            .map(|(&c, &pj)| if c == 1 { pj } else { 1.0 - pj })
            .product();
        total += phis[build_group(&chi)?.active_class()] * weight;
    }
    Ok(total)
}

pub(super) fn run<E: ChunkExecutor>(
    cfg: &ExperimentConfig,
    n_paths: u64,
    seed: u64,
    exec: &E,
) -> Result<Outcome> {
    cfg.reject_grid(true, false)?;
    let params: Params = cfg.params(&["p", "components"])?;
    let p = params.p;
    if p.len() > MAX_ENUMERATED {
        return Err(CliError::config(
            "parameters.p",
            format!("at most {MAX_ENUMERATED} indicators can be enumerated"),
        ));
    }
    let g = params
        .components
        .unwrap_or_else(|| (1..=p.len() + 1).map(|k| k as f64).collect());
    if g.len() != p.len() + 1 || g.iter().any(|x| !x.is_finite()) {
        return Err(CliError::config(
            "parameters.components",
            "need one finite value per class (one more than p)",
        ));
    }
    let betas = cfg.scalar_freqs_or(&[1.0])?;
    let phis_for = |beta: f64| -> Vec<Complex64> { g.iter().map(|&x| cis(beta * x)).collect() };
    mixture_charfn(&p, &phis_for(0.0)).map_err(param_error)?;

    let nb = betas.len();
    let stats = run_paths(exec, n_paths, seed, 2 * nb, |rng, out| {
        let chi: Vec<u8> = p
            .iter()
            .map(|&pj| u8::from(rng.random::<f64>() < pj))
            .collect();
        let value = g[build_group(&chi)?.active_class()];
        for (k, &beta) in betas.iter().enumerate() {
            let z = cis(beta * value);
            out[2 * k] = z.re;
            out[2 * k + 1] = z.im;
        }
        Ok(())
    })?;

    let mut rows = Vec::with_capacity(nb);
    let mut enum_error: f64 = 0.0;
    for (k, &beta) in betas.iter().enumerate() {
        let phis = phis_for(beta);
        let analytic = mixture_charfn(&p, &phis)?;
        enum_error = enum_error.max((analytic - enumerate_mixture(&p, &phis)?).norm());
        rows.push(ResultRow {
            quantity: "J".into(),
            t: None,
            freq: vec![beta],
            mean: Complex64::new(stats.mean[2 * k], stats.mean[2 * k + 1]),
            stderr: stats.stderr[2 * k].max(stats.stderr[2 * k + 1]),
            analytic,
        });
    }
    let max = max_ratio(&rows);
    let enum_ok = enum_error <= EXACT_TOLERANCE;
    Ok(Outcome {
        summary: format!(
            "mixture characteristic function over {} classes: max sigma ratio {max:.3}, enumeration error {enum_error:.3e}",
            g.len()
        ),
        details: json!({
            "p": p,
            "components": g,
            "enumeration_max_error": enum_error,
            "enumeration_ok": enum_ok,
        }),
        rows,
        max_sigma_ratio: max,
        pass: max <= SIGMA_TOLERANCE && enum_ok,
        series: Vec::new(),
    })
}
