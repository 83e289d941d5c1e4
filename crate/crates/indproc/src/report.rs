//! Result rows, `report.json`, and the CSV writers.
//!
//! Floats in CSV files are written with 17 significant digits, so parsing a
//! file back reproduces every value bit for bit. JSON uses serde_json's
//! shortest round-trip formatting.

use std::fs;
use std::path::{Path, PathBuf};

use indproc_core::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Monte Carlo tolerance, in standard errors.
pub const SIGMA_TOLERANCE: f64 = 4.0;
/// Absolute error treated as zero when a cell has no sampling noise.
pub const EXACT_TOLERANCE: f64 = 1e-12;

pub const RESULTS_FILE: &str = "results.csv";
pub const REPORT_FILE: &str = "report.json";
pub const TIMING_FILE: &str = "timing.json";
pub const PLOTDATA_FILE: &str = "plotdata.csv";

pub const RESULTS_HEADER: [&str; 10] = [
    "quantity",
    "t",
    "freq",
    "re_mean",
    "im_mean",
    "stderr",
    "re_analytic",
    "im_analytic",
    "abs_error",
    "sigma_ratio",
];

/// `|error| / stderr`; a zero stderr gives 0 for an exact match and ∞ otherwise.
pub fn sigma_ratio(abs_error: f64, stderr: f64) -> f64 {
    if stderr > 0.0 {
        abs_error / stderr
    } else if abs_error <= EXACT_TOLERANCE {
        0.0
    } else {
        f64::INFINITY
    }
}

/// One Monte Carlo cell compared with its analytic value.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub quantity: String,
    pub t: Option<f64>,
    pub freq: Vec<f64>,
    pub mean: Complex64,
    pub stderr: f64,
    pub analytic: Complex64,
}

impl ResultRow {
    /// Larger of the real and imaginary discrepancies.
    pub fn abs_error(&self) -> f64 {
        (self.mean.re - self.analytic.re)
            .abs()
            .max((self.mean.im - self.analytic.im).abs())
    }

    pub fn sigma_ratio(&self) -> f64 {
        sigma_ratio(self.abs_error(), self.stderr)
    }

    pub fn within(&self, sigmas: f64) -> bool {
        self.sigma_ratio() <= sigmas
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn fmt_freq(freq: &[f64]) -> String {
    freq.iter()
        .map(|&f| fmt_f64(f))
        .collect::<Vec<_>>()
        .join(";")
}

/// A named curve for external plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub t: Vec<f64>,
    pub value: Vec<f64>,
}

impl Series {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            t: Vec::new(),
            value: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, value: f64) {
        self.t.push(t);
        self.value.push(value);
    }
}

/// Contents of `report.json`. Wall time lives in `timing.json` so that this
/// file is reproducible bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub summary: String,
    pub pass: bool,
    /// `null` when some cell is infinitely far off (zero stderr, nonzero error).
    pub max_sigma_ratio: Option<f64>,
    pub tolerance_sigmas: f64,
    pub cells: usize,
    pub n_paths: u64,
    pub seed: u64,
    pub warnings: Vec<String>,
    pub series: Vec<Series>,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_seconds: f64,
    pub threads: usize,
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_results_csv(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(RESULTS_HEADER)?;
    for r in rows {
        w.write_record([
            r.quantity.clone(),
            fmt_opt(r.t),
            fmt_freq(&r.freq),
            fmt_f64(r.mean.re),
            fmt_f64(r.mean.im),
            fmt_f64(r.stderr),
            fmt_f64(r.analytic.re),
            fmt_f64(r.analytic.im),
            fmt_f64(r.abs_error()),
            fmt_f64(r.sigma_ratio()),
        ])?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes `results.csv`, `report.json` and `timing.json` into `dir`.
pub fn write_run(dir: &Path, rows: &[ResultRow], report: &Report, timing: &Timing) -> Result<()> {
    create_dir(dir)?;
    write_results_csv(&dir.join(RESULTS_FILE), rows)?;
    write_json(&dir.join(REPORT_FILE), report)?;
    write_json(&dir.join(TIMING_FILE), timing)
}

/// Accepts either a `report.json` path or the directory holding it.
pub fn report_path(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.join(REPORT_FILE)
    } else {
        path.to_path_buf()
    }
}

pub fn read_report(path: &Path) -> Result<Report> {
    let path = report_path(path);
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path, source })
}

/// Long-format `series,t,value` rows; a report without series gives a
/// header-only file.
pub fn write_plotdata(path: &Path, report: &Report) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["series", "t", "value"])?;
    for s in &report.series {
        for (&t, &v) in s.t.iter().zip(&s.value) {
            w.write_record([s.name.clone(), fmt_f64(t), fmt_f64(v)])?;
        }
    }
    w.flush().map_err(|e| CliError::io(path, e))
}
