//! Deterministic coefficient functions of time (drift `a(t)`, diffusion `b(t)`,
//! tabulated intensities).

use alloc::vec::Vec;

use crate::error::{param, Result};

/// A scalar function of time: constant, or piecewise-linear through a table.
///
/// Tabulated functions are held constant beyond the first and last knots.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeFunction {
    Constant(f64),
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

impl Default for TimeFunction {
    fn default() -> Self {
        TimeFunction::Constant(0.0)
    }
}

impl TimeFunction {
    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(param(
                "times",
                "table must be non-empty and match values in length",
            ));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(param("times", "table knots must be strictly increasing"));
        }
        if times.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(param("values", "table entries must be finite"));
        }
        Ok(TimeFunction::Tabulated { times, values })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TimeFunction::Constant(c) => *c,
            TimeFunction::Tabulated { times, values } => {
                let k = times.partition_point(|&x| x <= t);
                if k == 0 {
                    values[0]
                } else if k == times.len() {
                    values[k - 1]
                } else {
                    let (t0, t1) = (times[k - 1], times[k]);
                    let w = (t - t0) / (t1 - t0);
                    values[k - 1] + w * (values[k] - values[k - 1])
                }
            }
        }
    }

    /// Minimum and maximum over the whole table (or the constant).
    pub fn range(&self) -> (f64, f64) {
        match self {
            TimeFunction::Constant(c) => (*c, *c),
            TimeFunction::Tabulated { values, .. } => values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                }),
        }
    }

    /// `∫_a^b f(τ) dτ`, exact for the piecewise-linear representation.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        self.piecewise(a, b, |u, v, h| 0.5 * h * (u + v))
    }

    /// `∫_a^b f(τ)² dτ`, exact for the piecewise-linear representation.
    pub fn integral_sq(&self, a: f64, b: f64) -> f64 {
        self.piecewise(a, b, |u, v, h| h * (u * u + u * v + v * v) / 3.0)
    }

    fn piecewise(&self, a: f64, b: f64, piece: impl Fn(f64, f64, f64) -> f64) -> f64 {
        if !(b > a) {
            return 0.0;
        }
        match self {
            TimeFunction::Constant(c) => piece(*c, *c, b - a),
            TimeFunction::Tabulated { times, .. } => {
                let mut total = 0.0;
                let mut left = a;
                let start = times.partition_point(|&x| x <= a);
                for &knot in times[start..].iter().take_while(|&&x| x < b) {
                    total += piece(self.eval(left), self.eval(knot), knot - left);
                    left = knot;
                }
                total + piece(self.eval(left), self.eval(b), b - left)
            }
        }
    }
}
