//! Mapping between complete-group probabilities and independent Poisson
//! indicators.
//!
//! A complete group `z₁, …, z_n` built from indicators `χ₁, …, χ_{n−1}` has
//! class probabilities `p_j = q_j ∏_{k<j}(1 − q_k)`, where `q_j = P(χ_j = 1)`.
//! With `χ_j` the odd-parity indicator of a Poisson count with compensator
//! `a_j`, `q_j = ½(1 − e^{−2a_j})`, so only `q_j < ½` is reachable with a
//! finite intensity.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Error, Result};
use crate::indicator::{build_group, chi_of_count, group_occupancy_probabilities, Phase};
use crate::math;
use crate::montecarlo::{run_paths, ChunkExecutor};
use crate::poisson::sample_homogeneous;

/// Tolerance on `Σp = 1`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Class probabilities of a complete group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupTargets {
    p: Vec<f64>,
}

impl GroupTargets {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        check_group(&p)?;
        Ok(Self { p })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Indicator probabilities `q_j` and compensators `a_j`, `j = 1..n−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTargets {
    pub q: Vec<f64>,
    pub a: Vec<f64>,
}

fn range_ok(p: &[f64]) -> bool {
    p.iter().all(|&x| (0.0..=1.0).contains(&x))
}

fn sum_ok(p: &[f64]) -> bool {
    (p.iter().sum::<f64>() - 1.0).abs() <= SUM_TOLERANCE
}

fn check_group(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(param("p", "a group needs at least one class"));
    }
    if !range_ok(p) {
        return Err(param("p", "probabilities must lie in [0, 1]"));
    }
    if !sum_ok(p) {
        return Err(param("p", "probabilities must sum to 1"));
    }
    Ok(())
}

/// `tail[j] = Σ_{k≥j} p_k`, summed from the end so small tails keep their
/// relative accuracy. Has `n + 1` entries.
fn tails(p: &[f64]) -> Vec<f64> {
    let mut tail = vec![0.0; p.len() + 1];
    for j in (0..p.len()).rev() {
        tail[j] = tail[j + 1] + p[j];
    }
    tail
}

/// `q_j = p_j / (1 − Σ_{k<j} p_k)` for `j = 1..n−1`. Class indices in errors
/// are 1-based.
pub fn group_to_indicator(p: &[f64]) -> Result<Vec<f64>> {
    check_group(p)?;
    let tail = tails(p);
    let mut q = Vec::with_capacity(p.len() - 1);
    for j in 0..p.len() - 1 {
        if !(tail[j] > 0.0) {
            return Err(Error::Degenerate { index: j + 1 });
        }
        q.push((p[j] / tail[j]).min(1.0));
    }
    Ok(q)
}

/// Inverse of [`group_to_indicator`].
pub fn indicator_to_group(q: &[f64]) -> Result<Vec<f64>> {
    group_occupancy_probabilities(q)
}

/// `1 − Σ_{k≤j} p_k − p_j` for each `j = 1..n−1`, with `1 − Σ_{k≤j} p_k`
/// taken as the tail sum.
fn feasibility_denominators(p: &[f64]) -> Vec<f64> {
    let tail = tails(p);
    (0..p.len().saturating_sub(1))
        .map(|j| tail[j + 1] - p[j])
        .collect()
}

/// Compensators `a_j = ½ ln[(1 − Σ_{k<j} p_k) / (1 − Σ_{k≤j} p_k − p_j)]`.
/// Requires every denominator to be strictly positive.
pub fn intensity_from_group(p: &[f64]) -> Result<Vec<f64>> {
    check_group(p)?;
    let tail = tails(p);
    let denominators = feasibility_denominators(p);
    let mut a = Vec::with_capacity(denominators.len());
    for (j, &d) in denominators.iter().enumerate() {
        if !(d > 0.0) {
            return Err(Error::Infeasible {
                index: j + 1,
                denominator: d,
            });
        }
        a.push(if p[j] == 0.0 {
            0.0
        } else {
            0.5 * math::ln(tail[j] / d)
        });
    }
    Ok(a)
}

/// Both halves of the mapping at once.
pub fn indicator_targets(p: &[f64]) -> Result<IndicatorTargets> {
    let a = intensity_from_group(p)?;
    let q = group_to_indicator(p)?;
    Ok(IndicatorTargets { q, a })
}

/// Compensators and per-interval intensities for targets given on a time
/// grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityProfile {
    pub times: Vec<f64>,
    /// `a[i][j]`: compensator of indicator `j` at `times[i]`.
    pub a: Vec<Vec<f64>>,
    /// `lambda[i][j] = (a[i+1][j] − a[i][j]) / (times[i+1] − times[i])`.
    pub lambda: Vec<Vec<f64>>,
}

/// Maps time-dependent targets `p(t_i)` to compensators and recovers the
/// intensities by forward differences. A decreasing compensator is reported,
/// not clamped.
pub fn intensity_profile(times: &[f64], targets: &[Vec<f64>]) -> Result<IntensityProfile> {
    if times.is_empty() || times.len() != targets.len() {
        return Err(param("targets", "need one target vector per grid time"));
    }
    if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(param(
            "times",
            "grid must be finite and strictly increasing",
        ));
    }
    let n = targets[0].len();
    if targets.iter().any(|p| p.len() != n) {
        return Err(param(
            "targets",
            "every grid point needs the same number of classes",
        ));
    }
    let a = targets
        .iter()
        .map(|p| intensity_from_group(p))
        .collect::<Result<Vec<_>>>()?;
    let mut lambda = Vec::with_capacity(times.len() - 1);
    for step in 0..times.len() - 1 {
        let dt = times[step + 1] - times[step];
        let mut row = Vec::with_capacity(n.saturating_sub(1));
        for (j, (next, now)) in a[step + 1].iter().zip(&a[step]).enumerate() {
            let rate = (next - now) / dt;
            if rate < 0.0 {
                return Err(Error::NonMonotone { index: j + 1, step });
            }
            row.push(rate);
        }
        lambda.push(row);
    }
    Ok(IntensityProfile {
        times: times.to_vec(),
        a,
        lambda,
    })
}

/// Whether the targets can be produced with finite intensities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    /// Every tail mass exceeds its class probability.
    Strict,
    /// Some tail mass equals its class probability: the intensity is infinite.
    Boundary,
    Infeasible,
}

/// Diagnostic report of [`validate_group`].
#[derive(Debug, Clone, PartialEq)]
pub struct GroupValidation {
    pub sum_ok: bool,
    pub range_ok: bool,
    /// `Σ_{k>j} p_k ≥ p_j` for each `j = 1..n−1`.
    pub tail_ok: Vec<bool>,
    /// `p_{j+1} ≥ p_j` throughout. Sufficient for feasibility, not necessary.
    pub ranking_ok: bool,
    /// Ascending order of the classes when the ranking is violated.
    pub suggested_order: Option<Vec<usize>>,
    pub feasibility: Feasibility,
}

impl GroupValidation {
    /// True exactly when [`intensity_from_group`] succeeds.
    pub fn passes(&self) -> bool {
        self.sum_ok && self.range_ok && self.feasibility == Feasibility::Strict
    }
}

pub fn validate_group(p: &[f64]) -> GroupValidation {
    let range = !p.is_empty() && range_ok(p);
    let sum = !p.is_empty() && sum_ok(p);
    let denominators = feasibility_denominators(p);
    let tail_ok: Vec<bool> = denominators.iter().map(|&d| d >= 0.0).collect();
    let feasibility = if denominators.iter().all(|&d| d > 0.0) {
        Feasibility::Strict
    } else if tail_ok.iter().all(|&ok| ok) {
        Feasibility::Boundary
    } else {
        Feasibility::Infeasible
    };
    let ranking_ok = p.windows(2).all(|w| w[1] >= w[0]);
    let suggested_order = (!ranking_ok).then(|| {
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.sort_by(|&i, &j| p[i].total_cmp(&p[j]).then(i.cmp(&j)));
        order
    });
    GroupValidation {
        sum_ok: sum,
        range_ok: range,
        tail_ok,
        ranking_ok,
        suggested_order,
        feasibility,
    }
}

/// Monte Carlo check of the synthesized indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisReport {
    pub targets: Vec<f64>,
    pub q: Vec<f64>,
    pub a: Vec<f64>,
    pub lambda: Vec<f64>,
    pub empirical: Vec<f64>,
    /// Binomial standard error `√(p_j(1 − p_j)/n)` at the targets.
    pub stderr: Vec<f64>,
    pub n_paths: u64,
    pub pass: bool,
}

/// Tolerance of [`synthesize_and_verify`], in binomial standard errors.
pub const SYNTHESIS_SIGMAS: f64 = 4.0;

/// Drives `χ_j` (odd parity) with constant rates `a_j / horizon`, forms the
/// complete group at `t = horizon` on every path and compares the class
/// frequencies with the targets.
pub fn synthesize_and_verify<E: ChunkExecutor>(
    p: &[f64],
    horizon: f64,
    n_paths: u64,
    master_seed: u64,
    exec: &E,
) -> Result<SynthesisReport> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(param("horizon", "must be finite and strictly positive"));
    }
    let IndicatorTargets { q, a } = indicator_targets(p)?;
    let lambda: Vec<f64> = a.iter().map(|a| a / horizon).collect();
    let n = p.len();
    let stats = run_paths(exec, n_paths, master_seed, n, |rng, buf| {
        let mut chi = Vec::with_capacity(lambda.len());
        for &rate in &lambda {
            let count = sample_homogeneous(rate, horizon, rng)?.len() as u64;
            chi.push(chi_of_count(count, Phase::Minus, 0));
        }
        let group = build_group(&chi)?;
        buf[group.active_class()] = 1.0;
        Ok(())
    })?;
    let nf = n_paths as f64;
    let stderr: Vec<f64> = p
        .iter()
        .map(|&pj| math::sqrt(pj * (1.0 - pj) / nf))
        .collect();
    let pass = stats
        .mean
        .iter()
        .zip(p)
        .zip(&stderr)
        .all(|((&m, &pj), &s)| (m - pj).abs() <= (SYNTHESIS_SIGMAS * s).max(SUM_TOLERANCE));
    Ok(SynthesisReport {
        targets: p.to_vec(),
        q,
        a,
        lambda,
        empirical: stats.mean,
        stderr,
        n_paths,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::Sequential;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn group_to_indicator_examples() {
        assert!(close(
            &group_to_indicator(&[0.2, 0.3, 0.5]).unwrap(),
            &[0.2, 0.375],
            1e-15
        ));
        assert_eq!(group_to_indicator(&[1.0, 0.0]).unwrap(), vec![1.0]);
        assert_eq!(group_to_indicator(&[1.0]).unwrap(), Vec::<f64>::new());
        assert_eq!(
            group_to_indicator(&[1.0, 0.0, 0.0]),
            Err(Error::Degenerate { index: 2 })
        );
        assert!(group_to_indicator(&[0.5, 0.6]).is_err());
    }

    #[test]
    fn indicator_to_group_examples() {
        assert!(close(
            &indicator_to_group(&[0.2, 0.375]).unwrap(),
            &[0.2, 0.3, 0.5],
            1e-15
        ));
        assert_eq!(indicator_to_group(&[]).unwrap(), vec![1.0]);
        assert_eq!(indicator_to_group(&[0.5]).unwrap(), vec![0.5, 0.5]);
        assert!(indicator_to_group(&[1.5]).is_err());
    }

    #[test]
    fn intensity_examples() {
        let a = intensity_from_group(&[0.2, 0.3, 0.5]).unwrap();
        assert!((a[0] - 0.255_412_811_882_995).abs() < 1e-14);
        assert!((a[1] - core::f64::consts::LN_2).abs() < 1e-14);
        let q = group_to_indicator(&[0.2, 0.3, 0.5]).unwrap();
        for (aj, qj) in a.iter().zip(&q) {
            assert!((-0.5 * math::expm1(-2.0 * aj) - qj).abs() < 1e-12);
        }
        assert!(matches!(
            intensity_from_group(&[0.5, 0.5]),
            Err(Error::Infeasible { index: 1, .. })
        ));
        assert_eq!(
            intensity_from_group(&[0.0, 0.0, 1.0]).unwrap(),
            vec![0.0, 0.0]
        );
        assert_eq!(intensity_from_group(&[0.3, 0.0, 0.7]).unwrap()[1], 0.0);
    }

    #[test]
    fn validation_examples() {
        let v = validate_group(&[0.2, 0.3, 0.5]);
        assert!(v.passes() && v.ranking_ok && v.feasibility == Feasibility::Strict);

        let v = validate_group(&[0.5, 0.3, 0.2]);
        assert!(!v.ranking_ok);
        assert_eq!(v.suggested_order, Some(vec![2, 1, 0]));
        assert_eq!(v.feasibility, Feasibility::Infeasible);
        assert!(!v.passes());

        let v = validate_group(&[1.0]);
        assert!(v.passes() && v.tail_ok.is_empty());

        let v = validate_group(&[0.5, 0.5]);
        assert_eq!(v.feasibility, Feasibility::Boundary);
        assert!(!v.passes());

        assert!(!validate_group(&[0.2, 0.2]).sum_ok);
        assert!(!validate_group(&[]).passes());
    }

    #[test]
    fn profile_differences() {
        let times = [0.0, 1.0, 2.0];
        let targets = vec![vec![0.0, 1.0], vec![0.2, 0.8], vec![0.3, 0.7]];
        let prof = intensity_profile(&times, &targets).unwrap();
        assert_eq!(prof.a[0], vec![0.0]);
        assert!((prof.lambda[0][0] - 0.5 * libm::log(1.0 / 0.6)).abs() < 1e-14);
        assert!(prof.lambda[1][0] > 0.0);

        let decreasing = vec![vec![0.3, 0.7], vec![0.2, 0.8], vec![0.2, 0.8]];
        assert_eq!(
            intensity_profile(&times, &decreasing),
            Err(Error::NonMonotone { index: 1, step: 0 })
        );
        assert!(intensity_profile(&[0.0, 0.0], &targets[..2]).is_err());
    }

    #[test]
    fn synthesis_certain_last_class() {
        let r = synthesize_and_verify(&[0.0, 0.0, 1.0], 1.0, 500, 5, &Sequential).unwrap();
        assert_eq!(r.empirical, vec![0.0, 0.0, 1.0]);
        assert!(r.pass);
    }

    #[test]
    fn synthesis_small_run() {
        let r = synthesize_and_verify(&[0.2, 0.3, 0.5], 2.0, 20_000, 9, &Sequential).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.empirical.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(synthesize_and_verify(&[0.5, 0.5], 1.0, 100, 1, &Sequential).is_err());
        assert!(synthesize_and_verify(&[0.2, 0.3, 0.5], 0.0, 100, 1, &Sequential).is_err());
    }
}
