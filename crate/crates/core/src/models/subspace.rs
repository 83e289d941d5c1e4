use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::indicator::{DriverSpec, IndicatorSpec, Phase};
use crate::math;
use crate::rng::{PathRng, SeedSpec};

use super::{check_horizon, check_positive, PathModel, Trajectory};

/// Diffusion that runs in `x` while `½(1 + cos πN) = 1` and in `y` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSubspaceParams {
    pub b: f64,
    /// Rate at which the active subspace flips.
    pub rate: f64,
}

impl TwoSubspaceParams {
    pub fn validate(&self) -> Result<()> {
        check_positive(self.b, "b")?;
        check_positive(self.rate, "rate")
    }
}

/// Components are `x`, `y` and the driving Wiener path `w`; one Wiener
/// stream feeds both subspaces, so `x + y = x0 + y0 + b·w` on every path.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSubspaceModel {
    pub params: TwoSubspaceParams,
    pub horizon: f64,
    pub initial: [f64; 2],
}

impl TwoSubspaceModel {
    pub fn new(params: TwoSubspaceParams, horizon: f64) -> Self {
        Self {
            params,
            horizon,
            initial: [0.0; 2],
        }
    }
}

impl PathModel for TwoSubspaceModel {
    fn tag(&self) -> &'static str {
        "two-subspace"
    }

    fn component_names(&self) -> &'static [&'static str] {
        &["x", "y", "w"]
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        check_horizon(self.horizon)
    }

    fn sample_into(&self, times: &[f64], rng: &mut PathRng, out: &mut [f64]) -> Result<()> {
        let spec = IndicatorSpec::new(DriverSpec::poisson(self.params.rate), Phase::Plus);
        let driver = spec.driver.sample(self.horizon, rng)?;
        let timeline = spec.timeline(&driver);
        let b = self.params.b;
        let [mut x, mut y] = self.initial;
        let (mut w, mut prev) = (0.0, 0.0);
        for (row, &t) in out.chunks_exact_mut(3).zip(times) {
            let active = timeline.active_time(prev, t);
            let idle = ((t - prev) - active).max(0.0);
            let za: f64 = StandardNormal.sample(rng);
            let zi: f64 = StandardNormal.sample(rng);
            let (dw_active, dw_idle) = (math::sqrt(active) * za, math::sqrt(idle) * zi);
            x += b * dw_active;
            y += b * dw_idle;
            w += dw_active + dw_idle;
            prev = t;
            row.copy_from_slice(&[x, y, w]);
        }
        Ok(())
    }
}

pub fn simulate_two_subspace(
    params: TwoSubspaceParams,
    horizon: f64,
    grid: &[f64],
    seed: SeedSpec,
) -> Result<Trajectory> {
    TwoSubspaceModel::new(params, horizon).simulate(grid, seed)
}
