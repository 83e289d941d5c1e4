use rand_distr::{Distribution, StandardNormal};

use crate::error::{param, Result};
use crate::indicator::{DriverSpec, IndicatorSpec, Phase};
use crate::math;
use crate::rng::{PathRng, SeedSpec};
use crate::timefn::TimeFunction;

use super::{check_horizon, PathModel, Trajectory};

/// `dx = a(t) dt + χ(t) b(t) dw`; `y = x − ∫a` is the driftless part.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayDiffusionParams {
    pub drift: TimeFunction,
    pub diffusion: TimeFunction,
    /// Gate on the diffusion term. The usual choice is the `Plus` phase of a
    /// single or product Poisson driver; shift 1 starts the motion paused.
    pub indicator: IndicatorSpec,
}

impl DelayDiffusionParams {
    pub fn single(rate: f64, b: f64) -> Self {
        Self {
            drift: TimeFunction::Constant(0.0),
            diffusion: TimeFunction::Constant(b),
            indicator: IndicatorSpec::new(DriverSpec::poisson(rate), Phase::Plus),
        }
    }

    pub fn product(rate1: f64, rate2: f64, b: f64) -> Self {
        Self {
            indicator: IndicatorSpec::new(DriverSpec::product(rate1, rate2), Phase::Plus),
            ..Self::single(0.0, b)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.diffusion.range().0 < 0.0 {
            return Err(param("diffusion", "b(t) must be non-negative"));
        }
        self.indicator.driver.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelayDiffusionModel {
    pub params: DelayDiffusionParams,
    pub horizon: f64,
    pub x0: f64,
}

impl DelayDiffusionModel {
    pub fn new(params: DelayDiffusionParams, horizon: f64) -> Self {
        Self {
            params,
            horizon,
            x0: 0.0,
        }
    }
}

impl PathModel for DelayDiffusionModel {
    fn tag(&self) -> &'static str {
        "delay-diffusion"
    }

    fn component_names(&self) -> &'static [&'static str] {
        &["x", "y"]
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        check_horizon(self.horizon)
    }

    fn sample_into(&self, times: &[f64], rng: &mut PathRng, out: &mut [f64]) -> Result<()> {
        let p = &self.params;
        let driver = p.indicator.driver.sample(self.horizon, rng)?;
        let timeline = p.indicator.timeline(&driver);
        let (mut y, mut prev) = (0.0, 0.0);
        for (row, &t) in out.chunks_exact_mut(2).zip(times) {
            let variance = timeline.active_integral_sq(&p.diffusion, prev, t);
            let z: f64 = StandardNormal.sample(rng);
            y += math::sqrt(variance) * z;
            prev = t;
            row[0] = self.x0 + p.drift.integral(0.0, t) + y;
            row[1] = y;
        }
        Ok(())
    }
}

pub fn simulate_delay_diffusion(
    params: DelayDiffusionParams,
    horizon: f64,
    grid: &[f64],
    seed: SeedSpec,
) -> Result<Trajectory> {
    DelayDiffusionModel::new(params, horizon).simulate(grid, seed)
}
