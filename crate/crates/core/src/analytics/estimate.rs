//! Monte Carlo estimates of characteristic functions and path functionals.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{param, Result};
use crate::math;
use crate::models::PathModel;
use crate::montecarlo::{run_paths, ChunkExecutor, PathStats};

/// Sample mean of `e^{i⟨ω, X(t)⟩}` on a time × frequency table.
#[derive(Debug, Clone, PartialEq)]
pub struct CharFnEstimate {
    pub times: Vec<f64>,
    pub freqs: Vec<Vec<f64>>,
    pub n_paths: u64,
    /// Indexed `ti * freqs.len() + fi`.
    pub mean: Vec<Complex64>,
    /// Larger of the real and imaginary standard errors, same indexing.
    pub stderr: Vec<f64>,
}

impl CharFnEstimate {
    pub fn cell(&self, ti: usize, fi: usize) -> (Complex64, f64) {
        let k = ti * self.freqs.len() + fi;
        (self.mean[k], self.stderr[k])
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(param("times", "need at least one time"));
    }
    Ok(())
}

/// Estimates `E[exp(i Σ_k ω_k X_k(t))]`. Frequency vectors shorter than the
/// state are padded with zeros; longer ones are rejected.
pub fn estimate_charfn<M, E>(
    model: &M,
    times: &[f64],
    freqs: &[Vec<f64>],
    n_paths: u64,
    master_seed: u64,
    exec: &E,
) -> Result<CharFnEstimate>
where
    M: PathModel,
    E: ChunkExecutor,
{
    model.validate()?;
    check_times(times)?;
    model.check_times(times)?;
    let dim = model.components();
    if freqs.is_empty() {
        return Err(param("freqs", "need at least one frequency"));
    }
    if freqs
        .iter()
        .any(|w| w.len() > dim || w.iter().any(|x| !x.is_finite()))
    {
        return Err(param(
            "freqs",
            "frequency vectors must be finite and no longer than the state",
        ));
    }
    let nf = freqs.len();
    let width = 2 * times.len() * nf;
    let stats = run_paths(exec, n_paths, master_seed, width, |rng, buf| {
        let mut state = vec![0.0; times.len() * dim];
        model.sample_into(times, rng, &mut state)?;
        for (ti, row) in state.chunks_exact(dim).enumerate() {
            for (fi, w) in freqs.iter().enumerate() {
                let phase: f64 = w.iter().zip(row).map(|(a, x)| a * x).sum();
                let z = math::cis(phase);
                let k = 2 * (ti * nf + fi);
                buf[k] = z.re;
                buf[k + 1] = z.im;
            }
        }
        Ok(())
    })?;
    let cells = times.len() * nf;
    let mut mean = Vec::with_capacity(cells);
    let mut stderr = Vec::with_capacity(cells);
    for k in 0..cells {
        mean.push(Complex64::new(stats.mean[2 * k], stats.mean[2 * k + 1]));
        stderr.push(stats.stderr[2 * k].max(stats.stderr[2 * k + 1]));
    }
    Ok(CharFnEstimate {
        times: times.to_vec(),
        freqs: freqs.to_vec(),
        n_paths,
        mean,
        stderr,
    })
}

/// Averages `width` observables computed by `f` from each path's states at
/// `times` (row-major, one row per time).
pub fn estimate_functional<M, E, F>(
    model: &M,
    times: &[f64],
    width: usize,
    n_paths: u64,
    master_seed: u64,
    exec: &E,
    f: F,
) -> Result<PathStats>
where
    M: PathModel,
    E: ChunkExecutor,
    F: Fn(&[f64], &mut [f64]) + Sync + Send,
{
    model.validate()?;
    check_times(times)?;
    model.check_times(times)?;
    let dim = model.components();
    run_paths(exec, n_paths, master_seed, width, |rng, buf| {
        let mut state = vec![0.0; times.len() * dim];
        model.sample_into(times, rng, &mut state)?;
        f(&state, buf);
        Ok(())
    })
}
