//! Closed-form characteristic functions of the telegraph, two-subspace and
//! delay-center models, and the mean-square-displacement rate.
//!
//! Every characteristic function is produced by [`solve_linear2`] from its
//! second-order ODE and initial conditions.

use num_complex::Complex64;

use super::linear2::{solve_linear2, Linear2Ivp};
use crate::error::{param, Result};
use crate::math;

fn positive(value: f64, name: &'static str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(param(name, "must be finite and strictly positive"))
    }
}

fn finite(value: f64, name: &'static str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(param(name, "must be finite"))
    }
}

/// `I'' + 2λI' + c²β²I = 0`, `I(0) = 1`, `I'(0) = icβ`.
pub fn kac_ivp(rate: f64, speed: f64, beta: f64) -> Result<Linear2Ivp> {
    positive(rate, "rate")?;
    positive(speed, "speed")?;
    finite(beta, "beta")?;
    Ok(Linear2Ivp::real(
        2.0 * rate,
        speed * speed * beta * beta,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, speed * beta),
    ))
}

/// `E[e^{iβx(t)}]` for the telegraph process started at 0 moving right.
pub fn kac_charfn(rate: f64, speed: f64, beta: f64, t: f64) -> Result<Complex64> {
    Ok(solve_linear2(&kac_ivp(rate, speed, beta)?).eval(t))
}

/// Coefficient set used for the two-subspace characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OdeVariant {
    /// Damping `2λ + (α²+β²)b²/2`, stiffness `λ(α²+β²)b²/2 + α²β²b⁴/4`,
    /// from the two-state Feynman–Kac system.
    Corrected,
    /// Damping `½(4λ + (α²+β²)b²)`, stiffness
    /// `½(λα² + ½α²β²b² + λβ²)·b²β²`, as stated with the theorem.
    PrintedTheorem3,
    /// Damping `2λ + ½α²β²b²`, stiffness `α²β²b⁴/4 + ½λ(α²+β²)b²`, as in the
    /// last line of the derivation.
    PrintedProofFinal,
}

impl OdeVariant {
    pub const ALL: [OdeVariant; 3] = [
        OdeVariant::Corrected,
        OdeVariant::PrintedTheorem3,
        OdeVariant::PrintedProofFinal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OdeVariant::Corrected => "corrected",
            OdeVariant::PrintedTheorem3 => "printed_theorem3",
            OdeVariant::PrintedProofFinal => "printed_proof_final",
        }
    }

    /// `(damping, stiffness)`.
    pub fn coefficients(self, rate: f64, b: f64, alpha: f64, beta: f64) -> (f64, f64) {
        let (a2, b2, s2) = (alpha * alpha, beta * beta, b * b);
        match self {
            OdeVariant::Corrected => (
                2.0 * rate + (a2 + b2) * s2 / 2.0,
                rate * (a2 + b2) * s2 / 2.0 + a2 * b2 * s2 * s2 / 4.0,
            ),
            OdeVariant::PrintedTheorem3 => (
                0.5 * (4.0 * rate + (a2 + b2) * s2),
                0.5 * (rate * a2 + 0.5 * a2 * b2 * s2 + rate * b2) * s2 * b2,
            ),
            OdeVariant::PrintedProofFinal => (
                2.0 * rate + 0.5 * a2 * b2 * s2,
                a2 * b2 * s2 * s2 / 4.0 + 0.5 * rate * (a2 + b2) * s2,
            ),
        }
    }
}

/// Whether the first gated component is diffusing at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StartPhase {
    #[default]
    Active,
    Inactive,
}

/// IVP for `E[e^{i(αx+βy)}]` of the two-subspace model. With `Active` the
/// `x` subspace diffuses first, giving `J'(0) = −α²b²/2`; with `Inactive`,
/// `J'(0) = −β²b²/2`.
pub fn two_subspace_ivp(
    rate: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    variant: OdeVariant,
    start: StartPhase,
) -> Result<Linear2Ivp> {
    positive(rate, "rate")?;
    positive(b, "b")?;
    finite(alpha, "alpha")?;
    finite(beta, "beta")?;
    let (damping, stiffness) = variant.coefficients(rate, b, alpha, beta);
    let first = match start {
        StartPhase::Active => alpha,
        StartPhase::Inactive => beta,
    };
    Ok(Linear2Ivp::real(
        damping,
        stiffness,
        Complex64::new(1.0, 0.0),
        Complex64::new(-0.5 * first * first * b * b, 0.0),
    ))
}

pub fn two_subspace_charfn(
    rate: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    t: f64,
    variant: OdeVariant,
) -> Result<Complex64> {
    let ivp = two_subspace_ivp(rate, b, alpha, beta, variant, StartPhase::Active)?;
    Ok(solve_linear2(&ivp).eval(t))
}

/// `J₁'' + ½(β²b² + 4λ)J₁' + ½λβ²b²J₁ = 0`, `J₁(0) = 1`, and
/// `J₁'(0) = −½β²b²` when the particle starts moving (`0` when it starts
/// trapped).
pub fn delay_ivp(rate: f64, b: f64, beta: f64, start: StartPhase) -> Result<Linear2Ivp> {
    positive(rate, "rate")?;
    positive(b, "b")?;
    finite(beta, "beta")?;
    let k = beta * beta * b * b;
    let dy0 = match start {
        StartPhase::Active => -0.5 * k,
        StartPhase::Inactive => 0.0,
    };
    Ok(Linear2Ivp::real(
        0.5 * (k + 4.0 * rate),
        0.5 * rate * k,
        Complex64::new(1.0, 0.0),
        Complex64::new(dy0, 0.0),
    ))
}

/// `E[e^{iβy(t)}]` for `dy = ½(1 + cos πN) b dw` (real-valued).
pub fn delay_charfn(rate: f64, b: f64, beta: f64, t: f64) -> Result<f64> {
    delay_charfn_from(rate, b, beta, t, StartPhase::Active)
}

pub fn delay_charfn_from(rate: f64, b: f64, beta: f64, t: f64, start: StartPhase) -> Result<f64> {
    Ok(solve_linear2(&delay_ivp(rate, b, beta, start)?).eval(t).re)
}

fn check_msd(b: f64, mu1: f64, mu2: f64, t: f64) -> Result<()> {
    positive(b, "b")?;
    for (mu, name) in [(mu1, "mu1"), (mu2, "mu2")] {
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(param(name, "must be finite and non-negative"));
        }
    }
    if !(t >= 0.0) {
        return Err(param("t", "must be non-negative"));
    }
    Ok(())
}

/// `D(t) = dE[y²]/dt = ¼b²[4 − (1 − e^{−2μ₁t})(1 − e^{−2μ₂t})]` for the
/// product driver `N₁N₂`.
pub fn msd_rate(b: f64, mu1: f64, mu2: f64, t: f64) -> Result<f64> {
    check_msd(b, mu1, mu2, t)?;
    let odd1 = -math::expm1(-2.0 * mu1 * t);
    let odd2 = -math::expm1(-2.0 * mu2 * t);
    Ok(0.25 * b * b * (4.0 - odd1 * odd2))
}

/// `E[y²(t)] = ∫_0^t D(τ) dτ` in closed form.
pub fn msd_integral(b: f64, mu1: f64, mu2: f64, t: f64) -> Result<f64> {
    check_msd(b, mu1, mu2, t)?;
    // ∫_0^t e^{-kτ} dτ, continuous at k = 0
    let decay = |k: f64| {
        if k == 0.0 {
            t
        } else {
            -math::expm1(-k * t) / k
        }
    };
    let (k1, k2) = (2.0 * mu1, 2.0 * mu2);
    let both_odd = t - decay(k1) - decay(k2) + decay(k1 + k2);
    Ok(b * b * (t - 0.25 * both_odd))
}
