//! Experiment configuration files.
//!
//! A config is one JSON object:
//!
//! ```json
//! {
//!   "experiment": "kac-verify",
//!   "parameters": { "rate": 1.0, "speed": 1.0 },
//!   "n_paths": 100000,
//!   "master_seed": 20261016,
//!   "t_grid": { "start": 0.0, "stop": 5.0, "points": 11 },
//!   "freq_grid": [0.5, 1.0, 2.0],
//!   "output_dir": "out/kac"
//! }
//! ```
//!
//! `t_grid` is either a list of times or a `{start, stop, points}` range.
//! `freq_grid` holds scalars, or `[α, β]` pairs for two-component models.
//! Every field except `experiment` has a per-experiment default.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

pub const DEFAULT_PATHS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 20_261_016;
/// Runs below this many paths are flagged as low-power.
pub const LOW_POWER_PATHS: u64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    KacVerify,
    DelayMsd,
    SubspaceReferee,
    MixtureVerify,
    MapVerify,
    ParityCheck,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::KacVerify,
        ExperimentKind::DelayMsd,
        ExperimentKind::SubspaceReferee,
        ExperimentKind::MixtureVerify,
        ExperimentKind::MapVerify,
        ExperimentKind::ParityCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::KacVerify => "kac-verify",
            ExperimentKind::DelayMsd => "delay-msd",
            ExperimentKind::SubspaceReferee => "subspace-referee",
            ExperimentKind::MixtureVerify => "mixture-verify",
            ExperimentKind::MapVerify => "map-verify",
            ExperimentKind::ParityCheck => "parity-check",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = ExperimentKind::ALL.iter().map(|k| k.name()).collect();
                CliError::config(
                    "experiment",
                    format!("unknown experiment `{s}` (known: {})", known.join(", ")),
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum TimeGrid {
    List(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        points: usize,
    },
}

impl TimeGrid {
    pub fn linspace(start: f64, stop: f64, points: usize) -> Self {
        TimeGrid::Range {
            start,
            stop,
            points,
        }
    }

    /// Endpoints are reproduced exactly.
    pub fn times(&self) -> Result<Vec<f64>> {
        let times = match self {
            TimeGrid::List(v) => v.clone(),
            TimeGrid::Range {
                start,
                stop,
                points,
            } => match *points {
                0 => return Err(CliError::config("t_grid", "points must be at least 1")),
                1 => vec![*start],
                n => (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            *stop
                        } else {
                            start + (stop - start) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect(),
            },
        };
        if times.is_empty() {
            return Err(CliError::config("t_grid", "needs at least one time"));
        }
        if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(CliError::config(
                "t_grid",
                "times must be finite and non-negative",
            ));
        }
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(CliError::config("t_grid", "times must be sorted"));
        }
        Ok(times)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Freq {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Freq {
    pub fn as_vec(&self) -> Vec<f64> {
        match self {
            Freq::Scalar(x) => vec![*x],
            Freq::Vector(v) => v.clone(),
        }
    }
}

/// A parsed config with its per-experiment parameter block left raw.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub parameters: Map<String, Value>,
    pub n_paths: Option<u64>,
    pub master_seed: Option<u64>,
    pub t_grid: Option<TimeGrid>,
    pub freq_grid: Option<Vec<Freq>>,
    pub output_dir: Option<PathBuf>,
}

const FIELDS: [&str; 7] = [
    "experiment",
    "parameters",
    "n_paths",
    "master_seed",
    "t_grid",
    "freq_grid",
    "output_dir",
];

pub(crate) fn take<T: DeserializeOwned>(
    obj: &Map<String, Value>,
    field: &str,
    prefix: &str,
) -> Result<Option<T>> {
    match obj.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|e| CliError::config(format!("{prefix}{field}"), e.to_string())),
    }
}

pub(crate) fn reject_unknown(obj: &Map<String, Value>, known: &[&str], prefix: &str) -> Result<()> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(CliError::config(
            format!("{prefix}{k}"),
            format!("unknown field (expected one of: {})", known.join(", ")),
        )),
        None => Ok(()),
    }
}

pub(crate) fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            parameters: Map::new(),
            n_paths: None,
            master_seed: None,
            t_grid: None,
            freq_grid: None,
            output_dir: None,
        }
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| CliError::config("<root>", "config must be a JSON object"))?;
        reject_unknown(obj, &FIELDS, "")?;
        let name: String = take(obj, "experiment", "")?
            .ok_or_else(|| CliError::config("experiment", "missing"))?;
        Ok(Self {
            experiment: name.parse()?,
            parameters: take(obj, "parameters", "")?.unwrap_or_default(),
            n_paths: take(obj, "n_paths", "")?,
            master_seed: take(obj, "master_seed", "")?,
            t_grid: take(obj, "t_grid", "")?,
            freq_grid: take(obj, "freq_grid", "")?,
            output_dir: take(obj, "output_dir", "")?,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_value(&read_json(path)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| CliError::config("<root>", e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn paths(&self) -> Result<u64> {
        let n = self.n_paths.unwrap_or(DEFAULT_PATHS);
        if n < 2 {
            return Err(CliError::config("n_paths", "need at least 2 paths"));
        }
        Ok(n)
    }

    pub fn seed(&self) -> u64 {
        self.master_seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn times_or(&self, default: TimeGrid) -> Result<Vec<f64>> {
        self.t_grid.as_ref().unwrap_or(&default).times()
    }

    /// Scalar frequencies; pairs are rejected.
    pub fn scalar_freqs_or(&self, default: &[f64]) -> Result<Vec<f64>> {
        let Some(grid) = &self.freq_grid else {
            return Ok(default.to_vec());
        };
        let mut out = Vec::with_capacity(grid.len());
        for f in grid {
            match f {
                Freq::Scalar(x) if x.is_finite() => out.push(*x),
                Freq::Vector(v) if v.len() == 1 && v[0].is_finite() => out.push(v[0]),
                _ => {
                    return Err(CliError::config(
                        "freq_grid",
                        "expected finite scalar frequencies",
                    ))
                }
            }
        }
        if out.is_empty() {
            return Err(CliError::config(
                "freq_grid",
                "needs at least one frequency",
            ));
        }
        Ok(out)
    }

    /// `[α, β]` pairs.
    pub fn pair_freqs_or(&self, default: &[[f64; 2]]) -> Result<Vec<[f64; 2]>> {
        let Some(grid) = &self.freq_grid else {
            return Ok(default.to_vec());
        };
        let mut out = Vec::with_capacity(grid.len());
        for f in grid {
            match f.as_vec()[..] {
                [a, b] if a.is_finite() && b.is_finite() => out.push([a, b]),
                _ => {
                    return Err(CliError::config(
                        "freq_grid",
                        "expected finite [alpha, beta] pairs",
                    ))
                }
            }
        }
        if out.is_empty() {
            return Err(CliError::config(
                "freq_grid",
                "needs at least one frequency pair",
            ));
        }
        Ok(out)
    }

    /// Fails when a grid the experiment does not use was supplied.
    pub fn reject_grid(&self, t_grid: bool, freq_grid: bool) -> Result<()> {
        let used =
            |field: &str| CliError::config(field, format!("not used by {}", self.experiment));
        if t_grid && self.t_grid.is_some() {
            return Err(used("t_grid"));
        }
        if freq_grid && self.freq_grid.is_some() {
            return Err(used("freq_grid"));
        }
        Ok(())
    }

    /// Deserializes the parameter block, rejecting unknown keys.
    pub fn params<T: DeserializeOwned>(&self, known: &[&str]) -> Result<T> {
        reject_unknown(&self.parameters, known, "parameters.")?;
        serde_json::from_value(Value::Object(self.parameters.clone()))
            .map_err(|e| CliError::config("parameters", e.to_string()))
    }
}
