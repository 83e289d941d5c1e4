//! Stand-alone target synthesis: `{p, horizon, n_paths}` in,
//! `{q, a, lambda, empirical, stderr, pass}` out.

use std::path::Path;

use indproc_core::mapping::synthesize_and_verify;
use serde::{Deserialize, Serialize};

use crate::config::{read_json, reject_unknown, take, DEFAULT_PATHS, DEFAULT_SEED};
use crate::error::{CliError, Result};
use crate::exec::RayonExecutor;

#[derive(Debug, Clone, PartialEq)]
pub struct MapRequest {
    pub p: Vec<f64>,
    pub horizon: f64,
    pub n_paths: u64,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapResult {
    pub q: Vec<f64>,
    pub a: Vec<f64>,
    pub lambda: Vec<f64>,
    pub empirical: Vec<f64>,
    pub stderr: Vec<f64>,
    pub pass: bool,
}

impl MapRequest {
    pub fn from_path(path: &Path) -> Result<Self> {
        let value = read_json(path)?;
        let obj = value
            .as_object()
            .ok_or_else(|| CliError::config("<root>", "targets must be a JSON object"))?;
        reject_unknown(obj, &["p", "horizon", "n_paths", "master_seed"], "")?;
        Ok(Self {
            p: take(obj, "p", "")?.ok_or_else(|| CliError::config("p", "missing"))?,
            horizon: take(obj, "horizon", "")?.unwrap_or(1.0),
            n_paths: take(obj, "n_paths", "")?.unwrap_or(DEFAULT_PATHS),
            master_seed: take(obj, "master_seed", "")?.unwrap_or(DEFAULT_SEED),
        })
    }
}

pub fn map_targets(req: &MapRequest, exec: &RayonExecutor) -> Result<MapResult> {
    let r = synthesize_and_verify(&req.p, req.horizon, req.n_paths, req.master_seed, exec)
        .map_err(|e| match e {
            indproc_core::Error::Parameter { name, reason }
                if name == "n_paths" || name == "horizon" =>
            {
                CliError::config(name, reason)
            }
            other => CliError::config("p", other.to_string()),
        })?;
    Ok(MapResult {
        q: r.q,
        a: r.a,
        lambda: r.lambda,
        empirical: r.empirical,
        stderr: r.stderr,
        pass: r.pass,
    })
}
