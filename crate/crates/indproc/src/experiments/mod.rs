//! The named reproduction experiments.

mod delay;
mod kac;
mod mapping;
mod mixture;
mod parity;
mod subspace;

use indproc_core::montecarlo::ChunkExecutor;
use serde_json::Value;

use crate::config::{ExperimentConfig, ExperimentKind, LOW_POWER_PATHS};
use crate::error::Result;
use crate::report::{Report, ResultRow, Series, SIGMA_TOLERANCE};

/// What an experiment hands back before it is packaged into a [`Report`].
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub rows: Vec<ResultRow>,
    /// Largest sigma ratio over the rows that decide the verdict.
    pub max_sigma_ratio: f64,
    pub pass: bool,
    pub summary: String,
    pub series: Vec<Series>,
    pub details: Value,
}

pub(crate) fn max_ratio<'a>(rows: impl IntoIterator<Item = &'a ResultRow>) -> f64 {
    rows.into_iter()
        .map(ResultRow::sigma_ratio)
        .fold(0.0, f64::max)
}

/// Runs the configured experiment; nothing is written to disk.
pub fn run_experiment<E: ChunkExecutor>(
    cfg: &ExperimentConfig,
    exec: &E,
) -> Result<(Vec<ResultRow>, Report)> {
    let n_paths = cfg.paths()?;
    let seed = cfg.seed();
    let outcome = match cfg.experiment {
        ExperimentKind::KacVerify => kac::run(cfg, n_paths, seed, exec)?,
        ExperimentKind::DelayMsd => delay::run(cfg, n_paths, seed, exec)?,
        ExperimentKind::SubspaceReferee => subspace::run(cfg, n_paths, seed, exec)?,
        ExperimentKind::MixtureVerify => mixture::run(cfg, n_paths, seed, exec)?,
        ExperimentKind::MapVerify => mapping::run(cfg, n_paths, seed, exec)?,
        ExperimentKind::ParityCheck => parity::run(cfg, n_paths, seed, exec)?,
    };
    let mut warnings = Vec::new();
    if n_paths < LOW_POWER_PATHS {
        warnings.push(format!(
            "low-power: n_paths = {n_paths} is below {LOW_POWER_PATHS}; a pass carries little evidence"
        ));
    }
    let report = Report {
        experiment: cfg.experiment.name().to_string(),
        summary: outcome.summary,
        pass: outcome.pass,
        max_sigma_ratio: Some(outcome.max_sigma_ratio).filter(|r| r.is_finite()),
        tolerance_sigmas: SIGMA_TOLERANCE,
        cells: outcome.rows.len(),
        n_paths,
        seed,
        warnings,
        series: outcome.series,
        details: outcome.details,
    };
    Ok((outcome.rows, report))
}
