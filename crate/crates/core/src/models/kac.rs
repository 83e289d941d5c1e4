use crate::error::Result;
use crate::indicator::{DriverSpec, IndicatorSpec, IndicatorTimeline, Phase};
use crate::rng::{PathRng, SeedSpec};

use super::{check_horizon, check_positive, PathModel, Trajectory};

/// Telegraph motion at speed `c` whose direction flips at rate `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KacParams {
    pub speed: f64,
    pub rate: f64,
}

impl KacParams {
    pub fn validate(&self) -> Result<()> {
        check_positive(self.speed, "speed")?;
        check_positive(self.rate, "rate")
    }
}

/// `dx = (2χ − 1) c dt`, `χ = ½(1 + cos πN)`, `x(0) = x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct KacModel {
    pub params: KacParams,
    pub horizon: f64,
    pub x0: f64,
}

impl KacModel {
    pub fn new(params: KacParams, horizon: f64) -> Self {
        Self {
            params,
            horizon,
            x0: 0.0,
        }
    }

    fn indicator(&self) -> IndicatorSpec {
        IndicatorSpec::new(DriverSpec::poisson(self.params.rate), Phase::Plus)
    }
}

/// Exact Kac positions for a given velocity timeline (`+c` while active).
pub fn kac_path_from_timeline(
    speed: f64,
    x0: f64,
    timeline: &IndicatorTimeline,
    times: &[f64],
    out: &mut [f64],
) {
    let mut active = 0.0;
    let mut prev = 0.0;
    for (slot, &t) in out.iter_mut().zip(times) {
        active += timeline.active_time(prev, t);
        prev = t;
        // summed pieces may overshoot t by an ulp; the clamp keeps |x − x0| ≤ ct exact
        *slot = x0 + speed * (2.0 * active.clamp(0.0, t) - t);
    }
}

impl PathModel for KacModel {
    fn tag(&self) -> &'static str {
        "kac"
    }

    fn component_names(&self) -> &'static [&'static str] {
        &["x"]
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        check_horizon(self.horizon)
    }

    fn sample_into(&self, times: &[f64], rng: &mut PathRng, out: &mut [f64]) -> Result<()> {
        let spec = self.indicator();
        let driver = spec.driver.sample(self.horizon, rng)?;
        kac_path_from_timeline(
            self.params.speed,
            self.x0,
            &spec.timeline(&driver),
            times,
            out,
        );
        Ok(())
    }
}

pub fn simulate_kac(
    params: KacParams,
    horizon: f64,
    grid: &[f64],
    seed: SeedSpec,
) -> Result<Trajectory> {
    KacModel::new(params, horizon).simulate(grid, seed)
}
