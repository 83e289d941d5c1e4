//! Indicator processes built from the parity of Poisson counts, and the
//! complete-group construction over independent indicators.
//!
//! `χ(t) = ½(1 + cos πN(t))` is evaluated by integer parity, never through a
//! floating-point cosine. Indicators are read lazily off [`DriverPath`]s; an
//! [`IndicatorTimeline`] keeps only the switch times.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{param, Result};
use crate::math;
use crate::poisson::{sample_path, IntensitySpec, JumpPath};

/// `Plus` is `½(1 + cos πN)` (1 on even counts), `Minus` is `½(1 − cos πN)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Phase {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[inline]
fn chi_from_parity(odd: bool, phase: Phase, shift: u64) -> u8 {
    let even = odd == (shift % 2 == 1);
    match phase {
        Phase::Plus => u8::from(even),
        Phase::Minus => u8::from(!even),
    }
}

/// Indicator value for a count: with `Plus`, 1 iff `count + shift` is even.
pub fn chi_of_count(count: u64, phase: Phase, shift: u64) -> u8 {
    chi_from_parity(count % 2 == 1, phase, shift)
}

/// Recipe for the counting process behind an indicator.
#[derive(Debug, Clone, PartialEq)]
pub enum DriverSpec {
    /// A single Poisson process, homogeneous or tabulated.
    Poisson(IntensitySpec),
    /// `N(t) = N₁(t)·N₂(t)` for independent `N₁`, `N₂`.
    Product(IntensitySpec, IntensitySpec),
}

impl DriverSpec {
    pub fn poisson(rate: f64) -> Self {
        DriverSpec::Poisson(IntensitySpec::Constant(rate))
    }

    pub fn product(rate1: f64, rate2: f64) -> Self {
        DriverSpec::Product(
            IntensitySpec::Constant(rate1),
            IntensitySpec::Constant(rate2),
        )
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DriverSpec::Poisson(i) => i.validate(),
            DriverSpec::Product(a, b) => a.validate().and(b.validate()),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, horizon: f64, rng: &mut R) -> Result<DriverPath> {
        Ok(match self {
            DriverSpec::Poisson(i) => DriverPath::Single(sample_path(i, horizon, rng)?),
            DriverSpec::Product(a, b) => {
                let n1 = sample_path(a, horizon, rng)?;
                let n2 = sample_path(b, horizon, rng)?;
                DriverPath::Product(n1, n2)
            }
        })
    }
}

/// A sampled driver.
#[derive(Debug, Clone, PartialEq)]
pub enum DriverPath {
    Single(JumpPath),
    Product(JumpPath, JumpPath),
}

impl DriverPath {
    pub fn horizon(&self) -> f64 {
        match self {
            DriverPath::Single(p) => p.horizon(),
            DriverPath::Product(a, b) => a.horizon().min(b.horizon()),
        }
    }

    pub fn count_at(&self, t: f64) -> Result<u64> {
        match self {
            DriverPath::Single(p) => p.count_at(t),
            DriverPath::Product(a, b) => crate::poisson::product_count(a, b, t),
        }
    }

    fn is_odd_at(&self, t: f64) -> Result<bool> {
        match self {
            DriverPath::Single(p) => Ok(p.count_at(t)? % 2 == 1),
            DriverPath::Product(a, b) => Ok(a.count_at(t)? % 2 == 1 && b.count_at(t)? % 2 == 1),
        }
    }

    /// Times at which the count's parity changes, in increasing order.
    fn parity_switches(&self) -> Vec<f64> {
        match self {
            DriverPath::Single(p) => p
                .events()
                .iter()
                .filter(|e| e.size % 2 == 1)
                .map(|e| e.time)
                .collect(),
            DriverPath::Product(a, b) => {
                let (ea, eb) = (a.events(), b.events());
                let (mut i, mut j) = (0, 0);
                let (mut odd_a, mut odd_b) = (false, false);
                let mut odd = false;
                let mut out = Vec::new();
                while i < ea.len() || j < eb.len() {
                    let ta = ea.get(i).map_or(f64::INFINITY, |e| e.time);
                    let tb = eb.get(j).map_or(f64::INFINITY, |e| e.time);
                    let t = ta.min(tb);
                    if ta == t {
                        odd_a ^= ea[i].size % 2 == 1;
                        i += 1;
                    }
                    if tb == t {
                        odd_b ^= eb[j].size % 2 == 1;
                        j += 1;
                    }
                    let now = odd_a && odd_b;
                    if now != odd {
                        out.push(t);
                        odd = now;
                    }
                }
                out
            }
        }
    }
}

/// Recipe for a 0/1 process: driver, phase and integer phase shift.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSpec {
    pub driver: DriverSpec,
    pub phase: Phase,
    pub shift: u64,
}

impl IndicatorSpec {
    pub fn new(driver: DriverSpec, phase: Phase) -> Self {
        Self {
            driver,
            phase,
            shift: 0,
        }
    }

    pub fn with_shift(mut self, shift: u64) -> Self {
        self.shift = shift;
        self
    }

    /// Value at `t = 0`, where every count is zero.
    pub fn initial_value(&self) -> u8 {
        chi_of_count(0, self.phase, self.shift)
    }

    pub fn timeline(&self, driver: &DriverPath) -> IndicatorTimeline {
        IndicatorTimeline {
            horizon: driver.horizon(),
            initial: self.initial_value(),
            switches: driver.parity_switches(),
        }
    }
}

pub fn evaluate_indicator(spec: &IndicatorSpec, driver: &DriverPath, t: f64) -> Result<u8> {
    Ok(chi_from_parity(
        driver.is_odd_at(t)?,
        spec.phase,
        spec.shift,
    ))
}

/// Piecewise-constant 0/1 path: an initial value and the times it flips.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTimeline {
    horizon: f64,
    initial: u8,
    switches: Vec<f64>,
}

impl IndicatorTimeline {
    pub fn constant(horizon: f64, value: u8) -> Self {
        Self {
            horizon,
            initial: value,
            switches: Vec::new(),
        }
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn initial(&self) -> u8 {
        self.initial
    }

    pub fn switches(&self) -> &[f64] {
        &self.switches
    }

    /// Right-continuous value at `t` (a flip at `τ` is already visible at `τ`).
    pub fn value_at(&self, t: f64) -> u8 {
        let flips = self.switches.partition_point(|&s| s <= t);
        self.initial ^ (flips % 2) as u8
    }

    /// Lebesgue measure of `{τ ∈ [a, b] : χ(τ) = 1}`.
    pub fn active_time(&self, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        self.for_each_active(a, b, |l, r| total += r - l);
        total
    }

    /// `∫_a^b χ(τ) f(τ)² dτ` with the exact switch times.
    pub fn active_integral_sq(&self, f: &crate::timefn::TimeFunction, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        self.for_each_active(a, b, |l, r| total += f.integral_sq(l, r));
        total
    }

    fn for_each_active(&self, a: f64, b: f64, mut visit: impl FnMut(f64, f64)) {
        if !(b > a) {
            return;
        }
        let start = self.switches.partition_point(|&s| s <= a);
        let mut value = self.initial ^ (start % 2) as u8;
        let mut left = a;
        for &s in self.switches[start..].iter().take_while(|&&s| s < b) {
            if value == 1 {
                visit(left, s);
            }
            value ^= 1;
            left = s;
        }
        if value == 1 {
            visit(left, b);
        }
    }
}

fn check_rate_time(mu: f64, t: f64) -> Result<()> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(param("mu", "rate must be finite and non-negative"));
    }
    if !(t >= 0.0) {
        return Err(param("t", "time must be non-negative"));
    }
    Ok(())
}

/// `E[χ(t)]` for a rate-`μ` Poisson driver: `½(1 ± e^{−2μt})`.
pub fn expected_chi(mu: f64, t: f64, phase: Phase) -> Result<f64> {
    let parity = match phase {
        Phase::Plus => Parity::Even,
        Phase::Minus => Parity::Odd,
    };
    parity_probability(mu, t, parity)
}

/// Probability that a rate-`μ` Poisson count at time `t` is even (or odd).
pub fn parity_probability(mu: f64, t: f64, parity: Parity) -> Result<f64> {
    check_rate_time(mu, t)?;
    // 1 - e^{-x} via expm1 keeps the odd branch accurate near t = 0
    let odd = -0.5 * math::expm1(-2.0 * mu * t);
    Ok(match parity {
        Parity::Even => 1.0 - odd,
        Parity::Odd => odd,
    })
}

/// Values of a complete group of incompatible processes at one time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSample {
    pub z: Vec<u8>,
}

impl GroupSample {
    /// Index of the single active entry.
    pub fn active_class(&self) -> usize {
        self.z.iter().position(|&v| v == 1).unwrap_or(self.z.len())
    }
}

/// `z₁ = χ₁`, `z_k = χ_k ∏_{j<k}(1 − χ_j)`, `z_n = ∏_{j<n}(1 − χ_j)`.
pub fn build_group(chi: &[u8]) -> Result<GroupSample> {
    if chi.iter().any(|&c| c > 1) {
        return Err(param("chi", "indicator values must be 0 or 1"));
    }
    let mut z = vec![0u8; chi.len() + 1];
    let mut none_before: u8 = 1;
    for (k, &c) in chi.iter().enumerate() {
        z[k] = c * none_before;
        none_before *= 1 - c;
    }
    z[chi.len()] = none_before;
    Ok(GroupSample { z })
}

/// Class probabilities `(p₁, p₂(1 − p₁), …, ∏(1 − p_j))` of the complete group
/// formed from independent indicators with `P(χ_j = 1) = p_j`.
pub fn group_occupancy_probabilities(p: &[f64]) -> Result<Vec<f64>> {
    if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(param("p", "probabilities must lie in [0, 1]"));
    }
    let mut out = Vec::with_capacity(p.len() + 1);
    let mut none_before = 1.0;
    for &pk in p {
        out.push(pk * none_before);
        none_before *= 1.0 - pk;
    }
    out.push(none_before);
    Ok(out)
}
