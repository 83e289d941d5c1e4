//! Experiment runner, file formats and command-line front end for the
//! indicator-process simulations in [`indproc_core`].

pub mod config;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod mapjob;
pub mod report;
pub mod trajectory;

use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::{ExperimentConfig, ExperimentKind};
pub use error::{CliError, Result, EXIT_PASS, EXIT_TOLERANCE, EXIT_USAGE};
pub use exec::RayonExecutor;
pub use report::{Report, ResultRow};

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n_paths: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Where a run writes its files when neither the config nor `--out` says.
pub fn default_output_dir(kind: ExperimentKind) -> PathBuf {
    Path::new("out").join(kind.name())
}

/// Runs one experiment and writes its files. Returns the report together with
/// the exit code of the verdict.
pub fn run(mut cfg: ExperimentConfig, overrides: &Overrides) -> Result<(Report, u8)> {
    if overrides.seed.is_some() {
        cfg.master_seed = overrides.seed;
    }
    if overrides.n_paths.is_some() {
        cfg.n_paths = overrides.n_paths;
    }
    let dir = overrides
        .out
        .clone()
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| default_output_dir(cfg.experiment));
    let exec = RayonExecutor::new(overrides.threads);
    let start = Instant::now();
    let (rows, report) = experiments::run_experiment(&cfg, &exec)?;
    let timing = report::Timing {
        wall_time_seconds: start.elapsed().as_secs_f64(),
        threads: exec.threads(),
    };
    report::write_run(&dir, &rows, &report, &timing)?;
    let code = if report.pass {
        EXIT_PASS
    } else {
        EXIT_TOLERANCE
    };
    Ok((report, code))
}
