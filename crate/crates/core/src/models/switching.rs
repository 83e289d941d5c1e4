use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_distr::{Distribution, StandardNormal};

use crate::error::{param, Error, Result};
use crate::indicator::{IndicatorSpec, IndicatorTimeline};
use crate::math;
use crate::rng::{PathRng, SeedSpec};

use super::{check_horizon, PathModel, Trajectory};

/// Drift or diffusion coefficient `f(state, t)` writing into `out`.
pub type Coefficient = Box<dyn Fn(&[f64], f64, &mut [f64]) + Send + Sync>;

/// Which indicator gates the diffusion terms of the mixed form.
#[derive(Debug, Clone, PartialEq)]
pub enum DiffusionIndicator {
    SameAsDrift,
    Independent(IndicatorSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SwitchingForm {
    /// `dx = χ₁a₁dt + χ₂B₁dw + (1−χ₁)a₂dt + (1−χ₂)B₂dw` on the whole state.
    Mixed {
        drift_indicator: IndicatorSpec,
        diffusion_indicator: DiffusionIndicator,
    },
    /// State is `[x, y]` split in two halves:
    /// `dx = χ[a₁dt + B₁dw]`, `dy = (1−χ)[a₂dt + B₂dw]`.
    TwoSubspace { indicator: IndicatorSpec },
}

/// Euler–Maruyama setup for a switching SDE driven by a scalar Wiener process.
///
/// Indicators are frozen at each step's left endpoint. Keep
/// `dt ≤ 0.01 / max rate` so switching is resolved.
pub struct SwitchingSdeSpec {
    pub form: SwitchingForm,
    pub drift: [Coefficient; 2],
    pub diffusion: [Coefficient; 2],
    pub dt: f64,
    pub horizon: f64,
    pub initial: Vec<f64>,
}

impl fmt::Debug for SwitchingSdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SwitchingSdeSpec")
            .field("form", &self.form)
            .field("dt", &self.dt)
            .field("horizon", &self.horizon)
            .field("initial", &self.initial)
            .finish_non_exhaustive()
    }
}

pub fn constant(values: Vec<f64>) -> Coefficient {
    Box::new(move |_, _, out| out.copy_from_slice(&values))
}

impl SwitchingSdeSpec {
    /// Coefficient output width.
    fn block(&self) -> usize {
        match self.form {
            SwitchingForm::Mixed { .. } => self.initial.len(),
            SwitchingForm::TwoSubspace { .. } => self.initial.len() / 2,
        }
    }

    /// Uniform step grid `0, dt, 2dt, …`, ending exactly at the horizon.
    pub fn step_grid(&self) -> Vec<f64> {
        let n = steps_for(self.horizon, self.dt);
        (0..=n)
            .map(|i| {
                if i == n {
                    self.horizon
                } else {
                    i as f64 * self.dt
                }
            })
            .collect()
    }

    fn sample_timelines(
        &self,
        rng: &mut PathRng,
    ) -> Result<(IndicatorTimeline, IndicatorTimeline)> {
        match &self.form {
            SwitchingForm::Mixed {
                drift_indicator,
                diffusion_indicator,
            } => {
                let d = drift_indicator.driver.sample(self.horizon, rng)?;
                let drift_tl = drift_indicator.timeline(&d);
                let diff_tl = match diffusion_indicator {
                    DiffusionIndicator::SameAsDrift => drift_tl.clone(),
                    DiffusionIndicator::Independent(spec) => {
                        spec.timeline(&spec.driver.sample(self.horizon, rng)?)
                    }
                };
                Ok((drift_tl, diff_tl))
            }
            SwitchingForm::TwoSubspace { indicator } => {
                let tl = indicator.timeline(&indicator.driver.sample(self.horizon, rng)?);
                Ok((tl.clone(), tl))
            }
        }
    }
}

fn steps_for(span: f64, dt: f64) -> usize {
    if span <= 0.0 {
        return 0;
    }
    let n = libm::ceil(span / dt - 1e-9);
    (n as usize).max(1)
}

impl PathModel for SwitchingSdeSpec {
    fn tag(&self) -> &'static str {
        "switching-sde"
    }

    fn component_names(&self) -> &'static [&'static str] {
        const NAMES: [&str; 8] = ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"];
        &NAMES[..self.initial.len().min(NAMES.len())]
    }

    fn components(&self) -> usize {
        self.initial.len()
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn validate(&self) -> Result<()> {
        check_horizon(self.horizon)?;
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(param("dt", "step must be finite and positive"));
        }
        if self.initial.is_empty() || self.initial.len() > 8 {
            return Err(param("initial", "state dimension must be between 1 and 8"));
        }
        match &self.form {
            SwitchingForm::Mixed {
                drift_indicator,
                diffusion_indicator,
            } => {
                drift_indicator.driver.validate()?;
                if let DiffusionIndicator::Independent(spec) = diffusion_indicator {
                    spec.driver.validate()?;
                }
            }
            SwitchingForm::TwoSubspace { indicator } => {
                indicator.driver.validate()?;
                if !self.initial.len().is_multiple_of(2) {
                    return Err(param(
                        "initial",
                        "two-subspace state needs an even dimension",
                    ));
                }
            }
        }
        Ok(())
    }

    fn sample_into(&self, times: &[f64], rng: &mut PathRng, out: &mut [f64]) -> Result<()> {
        let (drift_tl, diff_tl) = self.sample_timelines(rng)?;
        let dim = self.initial.len();
        let half = self.block();
        let mut x = self.initial.clone();
        let mut a = [vec![0.0; half], vec![0.0; half]];
        let mut bm = [vec![0.0; half], vec![0.0; half]];
        let mut t = 0.0;
        let mut step = 0usize;
        for (row, &t_obs) in out.chunks_exact_mut(dim).zip(times) {
            let n = steps_for(t_obs - t, self.dt);
            let h = if n == 0 { 0.0 } else { (t_obs - t) / n as f64 };
            let t_start = t;
            for i in 0..n {
                let t_left = t_start + i as f64 * h;
                let chi_a = f64::from(drift_tl.value_at(t_left));
                let chi_b = f64::from(diff_tl.value_at(t_left));
                let z: f64 = StandardNormal.sample(rng);
                let dw = math::sqrt(h) * z;
                for k in 0..2 {
                    (self.drift[k])(&x, t_left, &mut a[k]);
                    (self.diffusion[k])(&x, t_left, &mut bm[k]);
                }
                match self.form {
                    SwitchingForm::Mixed { .. } => {
                        for j in 0..dim {
                            x[j] += (chi_a * a[0][j] + (1.0 - chi_a) * a[1][j]) * h
                                + (chi_b * bm[0][j] + (1.0 - chi_b) * bm[1][j]) * dw;
                        }
                    }
                    SwitchingForm::TwoSubspace { .. } => {
                        for j in 0..half {
                            x[j] += chi_a * (a[0][j] * h + bm[0][j] * dw);
                            x[half + j] += (1.0 - chi_a) * (a[1][j] * h + bm[1][j] * dw);
                        }
                    }
                }
                step += 1;
                if x.iter().any(|v| !v.is_finite()) {
                    return Err(Error::IntegrationBlowup {
                        step,
                        t: t_left + h,
                    });
                }
            }
            t = t_obs;
            row.copy_from_slice(&x);
        }
        Ok(())
    }
}

/// Runs the integrator on its own step grid and records every step.
pub fn simulate_switching_sde(spec: &SwitchingSdeSpec, seed: SeedSpec) -> Result<Trajectory> {
    let grid = spec.step_grid();
    spec.simulate(&grid, seed)
}
