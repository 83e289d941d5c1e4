//! Simulators for the switching models.
//!
//! [`KacModel`], [`DelayDiffusionModel`] and [`TwoSubspaceModel`] are exact in
//! distribution: indicators are integrated over the exact event times, and
//! Gaussian parts are drawn once per observation cell with the exact
//! active-time variance. [`SwitchingSdeSpec`] is an Euler–Maruyama integrator
//! for the general switching form and is the only simulator with a step size.

mod delay;
mod kac;
mod subspace;
mod switching;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Result};
use crate::rng::{PathRng, SeedSpec};

pub use delay::{simulate_delay_diffusion, DelayDiffusionModel, DelayDiffusionParams};
pub use kac::{kac_path_from_timeline, simulate_kac, KacModel, KacParams};
pub use subspace::{simulate_two_subspace, TwoSubspaceModel, TwoSubspaceParams};
pub use switching::{
    constant, simulate_switching_sde, Coefficient, DiffusionIndicator, SwitchingForm,
    SwitchingSdeSpec,
};

/// A simulated path observed on a time grid.
///
/// `state` is row-major: the values of all components at `grid[0]`, then at
/// `grid[1]`, and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: Vec<f64>,
    pub state: Vec<f64>,
    pub component_names: Vec<&'static str>,
    pub seed: SeedSpec,
    pub model_tag: &'static str,
}

impl Trajectory {
    pub fn components(&self) -> usize {
        self.component_names.len()
    }

    pub fn at(&self, step: usize) -> &[f64] {
        let k = self.components();
        &self.state[step * k..(step + 1) * k]
    }

    pub fn component(&self, index: usize) -> impl Iterator<Item = f64> + '_ {
        self.state
            .iter()
            .skip(index)
            .step_by(self.components())
            .copied()
    }
}

/// A model whose paths can be sampled at arbitrary observation times.
pub trait PathModel: Sync {
    fn tag(&self) -> &'static str;

    fn component_names(&self) -> &'static [&'static str];

    fn horizon(&self) -> f64;

    fn validate(&self) -> Result<()>;

    /// Writes the state at each of `times` (sorted, within `[0, horizon]`)
    /// into `out`, row-major. Must draw from `rng` only.
    fn sample_into(&self, times: &[f64], rng: &mut PathRng, out: &mut [f64]) -> Result<()>;

    fn components(&self) -> usize {
        self.component_names().len()
    }

    fn check_times(&self, times: &[f64]) -> Result<()> {
        if times.iter().any(|&t| !(t >= 0.0) || t > self.horizon()) {
            return Err(param(
                "times",
                "observation times must lie within [0, horizon]",
            ));
        }
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(param("times", "observation times must be sorted"));
        }
        Ok(())
    }

    /// One path on a grid that starts at 0 and strictly increases.
    fn simulate(&self, grid: &[f64], seed: SeedSpec) -> Result<Trajectory> {
        self.validate()?;
        if grid.first() != Some(&0.0) {
            return Err(param("grid", "trajectory grids start at t = 0"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(param(
                "grid",
                "trajectory grids must be strictly increasing",
            ));
        }
        self.check_times(grid)?;
        let mut state = vec![0.0; grid.len() * self.components()];
        self.sample_into(grid, &mut seed.rng(), &mut state)?;
        Ok(Trajectory {
            grid: grid.to_vec(),
            state,
            component_names: self.component_names().to_vec(),
            seed,
            model_tag: self.tag(),
        })
    }
}

pub(crate) fn check_positive(value: f64, name: &'static str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(param(name, "must be finite and strictly positive"))
    }
}

pub(crate) fn check_horizon(horizon: f64) -> Result<()> {
    if horizon >= 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(param("horizon", "must be finite and non-negative"))
    }
}
