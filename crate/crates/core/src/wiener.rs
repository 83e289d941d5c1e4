//! Brownian increments on a time grid.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{param, Result};
use crate::math;
use crate::rng::SeedSpec;

/// Increments `w(t_{i+1}) - w(t_i)` over consecutive grid points.
///
/// The grid must start at a non-negative time and be non-decreasing; a
/// zero-length interval yields an increment of exactly `0.0`.
pub fn sample_wiener_increments(grid: &[f64], seed: SeedSpec) -> Result<Vec<f64>> {
    wiener_increments(grid, &mut seed.rng())
}

pub fn wiener_increments<R: Rng + ?Sized>(grid: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    if grid.first().is_some_and(|&t| !(t >= 0.0)) {
        return Err(param("grid", "must start at a non-negative time"));
    }
    if grid
        .windows(2)
        .any(|w| !(w[1] >= w[0]) || !w[1].is_finite())
    {
        return Err(param("grid", "must be non-decreasing and finite"));
    }
    Ok(grid
        .windows(2)
        .map(|w| {
            let z: f64 = StandardNormal.sample(rng);
            let dt = w[1] - w[0];
            if dt == 0.0 {
                0.0
            } else {
                math::sqrt(dt) * z
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn degenerate_interval_is_exactly_zero() {
        let inc = sample_wiener_increments(&[0.0, 1.0, 1.0, 2.0], SeedSpec::new(3, 1)).unwrap();
        assert_eq!(inc.len(), 3);
        assert_eq!(inc[1].to_bits(), 0.0f64.to_bits());
        assert_ne!(inc[0], 0.0);
    }

    #[test]
    fn deterministic_given_seed() {
        let grid = vec![0.0, 0.1, 0.5, 2.0];
        let a = sample_wiener_increments(&grid, SeedSpec::new(5, 2)).unwrap();
        let b = sample_wiener_increments(&grid, SeedSpec::new(5, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn decreasing_grid_rejected() {
        assert!(sample_wiener_increments(&[0.0, 1.0, 0.5], SeedSpec::default()).is_err());
        assert!(sample_wiener_increments(&[-1.0, 0.0], SeedSpec::default()).is_err());
    }
}
