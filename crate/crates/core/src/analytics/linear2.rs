use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{param, Error, Result};
use crate::math::{cabs, cexp, csqrt};

/// `y'' + p y' + q y = 0`, `y(0) = y0`, `y'(0) = dy0`, over the complex numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linear2Ivp {
    pub damping: Complex64,
    pub stiffness: Complex64,
    pub y0: Complex64,
    pub dy0: Complex64,
}

impl Linear2Ivp {
    pub fn real(damping: f64, stiffness: f64, y0: Complex64, dy0: Complex64) -> Self {
        Self {
            damping: Complex64::new(damping, 0.0),
            stiffness: Complex64::new(stiffness, 0.0),
            y0,
            dy0,
        }
    }

    /// `|y'' + p y' + q y|` given the three values.
    pub fn residual(&self, y: Complex64, dy: Complex64, d2y: Complex64) -> f64 {
        cabs(d2y + self.damping * dy + self.stiffness * y)
    }
}

/// `C₁e^{r₁t} + C₂e^{r₂t}`, or `(C₁ + C₂t)e^{rt}` when the roots coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSolution {
    pub roots: [Complex64; 2],
    pub constants: [Complex64; 2],
    pub repeated_root: bool,
}

/// Root separation (relative to the coefficient scale) below which the
/// repeated-root form is used.
const REPEATED_ROOT_TOL: f64 = 1e-6;

pub fn solve_linear2(ivp: &Linear2Ivp) -> ClosedFormSolution {
    let (p, q) = (ivp.damping, ivp.stiffness);
    let s = csqrt(p * p - 4.0 * q);
    // pick the sign that avoids cancellation, then use r₁r₂ = q
    let s = if (p.conj() * s).re >= 0.0 { s } else { -s };
    let r1 = -(p + s) * 0.5;
    let r2 = if cabs(r1) > 0.0 {
        q / r1
    } else {
        Complex64::new(0.0, 0.0)
    };
    let scale = 1.0f64.max(cabs(p)).max(crate::math::sqrt(cabs(q)));
    if cabs(r1 - r2) <= REPEATED_ROOT_TOL * scale {
        let r = (r1 + r2) * 0.5;
        return ClosedFormSolution {
            roots: [r, r],
            constants: [ivp.y0, ivp.dy0 - r * ivp.y0],
            repeated_root: true,
        };
    }
    let c2 = (ivp.dy0 - r1 * ivp.y0) / (r2 - r1);
    let c1 = ivp.y0 - c2;
    ClosedFormSolution {
        roots: [r1, r2],
        constants: [c1, c2],
        repeated_root: false,
    }
}

impl ClosedFormSolution {
    pub fn eval(&self, t: f64) -> Complex64 {
        let [r1, r2] = self.roots;
        let [c1, c2] = self.constants;
        if self.repeated_root {
            (c1 + c2 * t) * cexp(r1 * t)
        } else {
            c1 * cexp(r1 * t) + c2 * cexp(r2 * t)
        }
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        let [r1, r2] = self.roots;
        let [c1, c2] = self.constants;
        if self.repeated_root {
            (c2 + r1 * (c1 + c2 * t)) * cexp(r1 * t)
        } else {
            c1 * r1 * cexp(r1 * t) + c2 * r2 * cexp(r2 * t)
        }
    }
}

/// Default RK4 step cap used by [`integrate_linear2_rk4`] callers.
pub const RK4_MAX_STEP: f64 = 1e-3;

/// Classical RK4 on `(y, y')`, returning `y` at each of `times`.
///
/// `times` must be sorted and non-negative; integration starts at 0 and each
/// gap is split into equal steps no longer than `max_step`.
pub fn integrate_linear2_rk4(
    ivp: &Linear2Ivp,
    times: &[f64],
    max_step: f64,
) -> Result<Vec<Complex64>> {
    if !(max_step > 0.0) {
        return Err(param("max_step", "must be positive"));
    }
    if times.iter().any(|&t| !(t >= 0.0) || !t.is_finite()) || times.windows(2).any(|w| w[1] < w[0])
    {
        return Err(param("times", "must be sorted, finite and non-negative"));
    }
    let (p, q) = (ivp.damping, ivp.stiffness);
    let f = |y: Complex64, v: Complex64| (v, -p * v - q * y);
    let (mut y, mut v) = (ivp.y0, ivp.dy0);
    let mut t = 0.0;
    let mut step = 0usize;
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        let span = target - t;
        if span > 0.0 {
            let n = libm::ceil(span / max_step).max(1.0) as usize;
            let h = span / n as f64;
            for _ in 0..n {
                let (k1y, k1v) = f(y, v);
                let (k2y, k2v) = f(y + k1y * (0.5 * h), v + k1v * (0.5 * h));
                let (k3y, k3v) = f(y + k2y * (0.5 * h), v + k2v * (0.5 * h));
                let (k4y, k4v) = f(y + k3y * h, v + k3v * h);
                y += (k1y + k2y * 2.0 + k3y * 2.0 + k4y) * (h / 6.0);
                v += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
                step += 1;
                if !(y.re.is_finite() && y.im.is_finite() && v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::IntegrationBlowup { step, t: t + h });
                }
            }
            t = target;
        }
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn harmonic_oscillator() {
        let sol = solve_linear2(&Linear2Ivp::real(0.0, 1.0, c(1.0, 0.0), c(0.0, 0.0)));
        assert!(!sol.repeated_root);
        for t in [0.0, 0.3, 1.0, 2.0, 7.5] {
            assert!(cabs(sol.eval(t) - c(libm::cos(t), 0.0)) < 1e-14);
        }
    }

    #[test]
    fn critical_damping() {
        let sol = solve_linear2(&Linear2Ivp::real(2.0, 1.0, c(1.0, 0.0), c(-1.0, 0.0)));
        assert!(sol.repeated_root);
        for t in [0.0, 0.5, 1.0, 4.0] {
            assert!(cabs(sol.eval(t) - c(libm::exp(-t), 0.0)) < 1e-15);
        }
    }

    #[test]
    fn initial_conditions_reproduced() {
        let ivp = Linear2Ivp {
            damping: c(0.3, -1.0),
            stiffness: c(2.0, 0.5),
            y0: c(0.2, 0.7),
            dy0: c(-1.1, 0.4),
        };
        let sol = solve_linear2(&ivp);
        assert!(cabs(sol.eval(0.0) - ivp.y0) < 1e-12);
        assert!(cabs(sol.derivative(0.0) - ivp.dy0) < 1e-12);
    }

    #[test]
    fn rk4_matches_cosine() {
        let ivp = Linear2Ivp::real(0.0, 1.0, c(1.0, 0.0), c(0.0, 0.0));
        let y = integrate_linear2_rk4(&ivp, &[1.0], 1e-3).unwrap();
        assert!((y[0].re - libm::cos(1.0)).abs() < 1e-10);
    }

    #[test]
    fn rk4_zero_length_grid() {
        let ivp = Linear2Ivp::real(1.0, 1.0, c(0.4, 0.1), c(2.0, 0.0));
        assert_eq!(integrate_linear2_rk4(&ivp, &[0.0], 1e-3).unwrap(), [ivp.y0]);
        assert!(integrate_linear2_rk4(&ivp, &[], 1e-3).unwrap().is_empty());
        assert!(integrate_linear2_rk4(&ivp, &[1.0, 0.5], 1e-3).is_err());
    }

    #[test]
    fn rk4_blowup_detected() {
        let ivp = Linear2Ivp::real(-2000.0, 0.0, c(1.0, 0.0), c(1.0, 0.0));
        assert!(matches!(
            integrate_linear2_rk4(&ivp, &[10.0], 1e-3),
            Err(Error::IntegrationBlowup { .. })
        ));
    }
}
