//! Exact sampling of counting processes on `[0, T]`.
//!
//! Homogeneous paths are built from exponential inter-arrival times.
//! Inhomogeneous paths thin a dominating homogeneous stream of rate `λ_max`
//! (Lewis–Shedler), with the intensity interpolated piecewise-linearly.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{param, Error, Result};
use crate::rng::SeedSpec;
use crate::timefn::TimeFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpEvent {
    pub time: f64,
    pub size: u32,
}

/// One realization of a counting process on `[0, horizon]`.
///
/// Event times are strictly increasing and lie in `(0, horizon]`; every jump
/// size is positive, so the count is non-decreasing with `count(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpPath {
    horizon: f64,
    events: Vec<JumpEvent>,
}

impl JumpPath {
    pub fn new(horizon: f64, events: Vec<JumpEvent>) -> Result<Self> {
        if !(horizon >= 0.0) || !horizon.is_finite() {
            return Err(param("horizon", "must be finite and non-negative"));
        }
        let mut prev = 0.0;
        for e in &events {
            if !(e.time > prev) || e.time > horizon {
                return Err(param(
                    "events",
                    "event times must be strictly increasing within (0, horizon]",
                ));
            }
            if e.size == 0 {
                return Err(param("events", "jump sizes must be positive"));
            }
            prev = e.time;
        }
        Ok(Self { horizon, events })
    }

    /// A path whose jumps all have size one.
    pub fn unit_jumps(horizon: f64, times: &[f64]) -> Result<Self> {
        Self::new(
            horizon,
            times
                .iter()
                .map(|&time| JumpEvent { time, size: 1 })
                .collect(),
        )
    }

    pub fn empty(horizon: f64) -> Self {
        Self {
            horizon,
            events: Vec::new(),
        }
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn events(&self) -> &[JumpEvent] {
        &self.events
    }

    pub fn event_times(&self) -> impl Iterator<Item = f64> + '_ {
        self.events.iter().map(|e| e.time)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn count_at(&self, t: f64) -> Result<u64> {
        self.check_time(t)?;
        Ok(self.count_at_unchecked(t))
    }

    pub(crate) fn count_at_unchecked(&self, t: f64) -> u64 {
        let k = self.events.partition_point(|e| e.time <= t);
        if self.events.iter().all(|e| e.size == 1) {
            k as u64
        } else {
            self.events[..k].iter().map(|e| u64::from(e.size)).sum()
        }
    }

    pub(crate) fn check_time(&self, t: f64) -> Result<()> {
        if t >= 0.0 && t <= self.horizon {
            Ok(())
        } else {
            Err(Error::Domain {
                t,
                horizon: self.horizon,
            })
        }
    }
}

/// Intensity of a Poisson process.
#[derive(Debug, Clone, PartialEq)]
pub enum IntensitySpec {
    Constant(f64),
    /// Piecewise-linear `λ(t)` bounded above by `max`, which is the rate of
    /// the dominating stream used for thinning.
    Tabulated {
        rate: TimeFunction,
        max: f64,
    },
}

impl IntensitySpec {
    pub fn tabulated(times: Vec<f64>, rates: Vec<f64>, max: f64) -> Result<Self> {
        let spec = IntensitySpec::Tabulated {
            rate: TimeFunction::tabulated(times, rates)?,
            max,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            IntensitySpec::Constant(rate) => {
                if !(*rate >= 0.0) || !rate.is_finite() {
                    return Err(param("rate", "must be finite and non-negative"));
                }
            }
            IntensitySpec::Tabulated { rate, max } => {
                if !(*max >= 0.0) || !max.is_finite() {
                    return Err(param("max", "must be finite and non-negative"));
                }
                let (lo, hi) = rate.range();
                if lo < 0.0 {
                    return Err(param("rate", "tabulated intensity must be non-negative"));
                }
                if hi > *max {
                    return Err(param("max", "tabulated intensity exceeds the bound"));
                }
            }
        }
        Ok(())
    }

    /// Compensator `a(t) = ∫_0^t λ(τ) dτ`.
    pub fn cumulative(&self, t: f64) -> f64 {
        match self {
            IntensitySpec::Constant(rate) => rate * t,
            IntensitySpec::Tabulated { rate, .. } => rate.integral(0.0, t),
        }
    }
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon >= 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(param("horizon", "must be finite and non-negative"))
    }
}

pub fn sample_poisson_path(
    intensity: &IntensitySpec,
    horizon: f64,
    seed: SeedSpec,
) -> Result<JumpPath> {
    match intensity {
        IntensitySpec::Constant(rate) => sample_homogeneous(*rate, horizon, &mut seed.rng()),
        IntensitySpec::Tabulated { .. } => Err(param(
            "intensity",
            "homogeneous sampling needs a constant rate",
        )),
    }
}

pub fn sample_inhomogeneous_poisson_path(
    intensity: &IntensitySpec,
    horizon: f64,
    seed: SeedSpec,
) -> Result<JumpPath> {
    match intensity {
        IntensitySpec::Tabulated { .. } => sample_path(intensity, horizon, &mut seed.rng()),
        IntensitySpec::Constant(_) => Err(param(
            "intensity",
            "thinning needs a tabulated intensity with an upper bound",
        )),
    }
}

/// Samples either kind of intensity from an existing stream.
pub fn sample_path<R: Rng + ?Sized>(
    intensity: &IntensitySpec,
    horizon: f64,
    rng: &mut R,
) -> Result<JumpPath> {
    match intensity {
        IntensitySpec::Constant(rate) => sample_homogeneous(*rate, horizon, rng),
        IntensitySpec::Tabulated { rate, max } => {
            intensity.validate()?;
            check_horizon(horizon)?;
            let mut events = Vec::new();
            if *max > 0.0 {
                let mut t = 0.0;
                loop {
                    let gap: f64 = Exp1.sample(rng);
                    t += gap / max;
                    if t > horizon {
                        break;
                    }
                    let u: f64 = rng.random();
                    if u * max < rate.eval(t)
                        && t > events.last().map_or(0.0, |e: &JumpEvent| e.time)
                    {
                        events.push(JumpEvent { time: t, size: 1 });
                    }
                }
            }
            Ok(JumpPath { horizon, events })
        }
    }
}

pub fn sample_homogeneous<R: Rng + ?Sized>(
    rate: f64,
    horizon: f64,
    rng: &mut R,
) -> Result<JumpPath> {
    IntensitySpec::Constant(rate).validate()?;
    check_horizon(horizon)?;
    let mut events = Vec::new();
    if rate > 0.0 {
        let mut t = 0.0;
        loop {
            let gap: f64 = Exp1.sample(rng);
            t += gap / rate;
            if t > horizon {
                break;
            }
            // an Exp1 draw of exactly 0 would duplicate the previous time
            if t > events.last().map_or(0.0, |e: &JumpEvent| e.time) {
                events.push(JumpEvent { time: t, size: 1 });
            }
        }
    }
    Ok(JumpPath { horizon, events })
}

/// `count₁(t)·count₂(t)` for the product driver.
pub fn product_count(n1: &JumpPath, n2: &JumpPath, t: f64) -> Result<u64> {
    let a = n1.count_at(t)?;
    let b = n2.count_at(t)?;
    Ok(a * b)
}
