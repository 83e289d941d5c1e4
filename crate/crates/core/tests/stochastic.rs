mod common;

use common::*;
use indproc_core::poisson::{
    product_count, sample_homogeneous, sample_inhomogeneous_poisson_path, sample_poisson_path,
    IntensitySpec, JumpPath,
};
use indproc_core::rng::{derive_path_rng, SeedSpec};
use indproc_core::wiener::sample_wiener_increments;
use indproc_core::Error;
use rand::Rng;

const N: u64 = 100_000;

/// Structural invariants every sampled path must satisfy.
fn check_path(p: &JumpPath) {
    assert_eq!(p.count_at(0.0).unwrap(), 0);
    let mut prev_t = 0.0;
    let mut prev_count = 0;
    for e in p.events() {
        assert!(e.time > prev_t && e.time <= p.horizon());
        assert!(e.size >= 1);
        let c = p.count_at(e.time).unwrap();
        assert!(c > prev_count);
        prev_t = e.time;
        prev_count = c;
    }
    assert_eq!(p.count_at(p.horizon()).unwrap(), prev_count);
}

fn poisson_pmf(mean: f64, k: u64) -> f64 {
    let mut p = (-mean).exp();
    for i in 1..=k {
        p *= mean / i as f64;
    }
    p
}

#[test]
fn homogeneous_count_distribution() {
    for (rate, horizon) in [(1.0, 1.0), (2.0, 2.0)] {
        let mut hist = [0u64; 9];
        for i in 0..N {
            let p = sample_poisson_path(
                &IntensitySpec::Constant(rate),
                horizon,
                SeedSpec::new(101, i),
            )
            .unwrap();
            check_path(&p);
            let k = p.count_at(horizon).unwrap() as usize;
            if k <= 8 {
                hist[k] += 1;
            }
        }
        for (k, &h) in hist.iter().enumerate() {
            let expect = poisson_pmf(rate * horizon, k as u64);
            let se = (expect * (1.0 - expect) / N as f64).sqrt();
            let freq = h as f64 / N as f64;
            assert!(
                (freq - expect).abs() <= 4.0 * se,
                "λt={} k={k}: {freq} vs {expect}",
                rate * horizon
            );
        }
    }
}

#[test]
fn homogeneous_mean_count() {
    let counts: Vec<f64> = (0..N)
        .map(|i| {
            let p = sample_poisson_path(&IntensitySpec::Constant(2.0), 10.0, SeedSpec::new(7, i))
                .unwrap();
            check_path(&p);
            p.len() as f64
        })
        .collect();
    let (m, _) = mean_se(&counts);
    assert!((m - 20.0).abs() <= 4.0 * (20.0 / N as f64).sqrt(), "{m}");
}

#[test]
fn zero_rate_and_determinism() {
    assert!(
        sample_poisson_path(&IntensitySpec::Constant(0.0), 5.0, SeedSpec::new(1, 2))
            .unwrap()
            .is_empty()
    );
    let a = sample_poisson_path(&IntensitySpec::Constant(3.0), 4.0, SeedSpec::new(9, 9)).unwrap();
    let b = sample_poisson_path(&IntensitySpec::Constant(3.0), 4.0, SeedSpec::new(9, 9)).unwrap();
    assert_eq!(a, b);
    assert!(sample_poisson_path(&IntensitySpec::Constant(-1.0), 1.0, SeedSpec::default()).is_err());
    assert!(sample_poisson_path(&IntensitySpec::Constant(1.0), -1.0, SeedSpec::default()).is_err());
}

#[test]
fn flat_tabulated_matches_homogeneous_mean() {
    let flat = IntensitySpec::tabulated(vec![0.0, 3.0], vec![1.0, 1.0], 1.0).unwrap();
    let thinned: Vec<f64> = (0..N)
        .map(|i| {
            let p = sample_inhomogeneous_poisson_path(&flat, 3.0, SeedSpec::new(55, i)).unwrap();
            check_path(&p);
            p.len() as f64
        })
        .collect();
    let direct: Vec<f64> = (0..N)
        .map(|i| {
            sample_poisson_path(&IntensitySpec::Constant(1.0), 3.0, SeedSpec::new(56, i))
                .unwrap()
                .len() as f64
        })
        .collect();
    let (ma, sa) = mean_se(&thinned);
    let (mb, sb) = mean_se(&direct);
    assert!(
        (ma - mb).abs() <= 4.0 * (sa * sa + sb * sb).sqrt(),
        "{ma} vs {mb}"
    );
}

#[test]
fn ramp_intensity_mean_count() {
    let ramp = IntensitySpec::tabulated(vec![0.0, 2.0], vec![0.0, 2.0], 2.0).unwrap();
    assert_eq!(ramp.cumulative(2.0), 2.0);
    let counts: Vec<f64> = (0..N)
        .map(|i| {
            let p = sample_inhomogeneous_poisson_path(&ramp, 2.0, SeedSpec::new(77, i)).unwrap();
            check_path(&p);
            p.len() as f64
        })
        .collect();
    let (m, se) = mean_se(&counts);
    assert!((m - 2.0).abs() <= 4.0 * se, "{m} ± {se}");
}

#[test]
fn bound_below_peak_is_rejected() {
    assert!(IntensitySpec::tabulated(vec![0.0, 2.0], vec![0.0, 2.0], 1.5).is_err());
    assert!(IntensitySpec::tabulated(vec![0.0, 2.0], vec![-0.1, 1.0], 1.5).is_err());
    assert!(sample_inhomogeneous_poisson_path(
        &IntensitySpec::Constant(1.0),
        1.0,
        SeedSpec::default()
    )
    .is_err());
}

#[test]
fn thinned_interarrivals_are_exponential() {
    let rate = 1.5;
    let spec = IntensitySpec::tabulated(vec![0.0, 4000.0], vec![rate, rate], 3.0).unwrap();
    let p = sample_inhomogeneous_poisson_path(&spec, 4000.0, SeedSpec::new(31, 0)).unwrap();
    check_path(&p);
    let times: Vec<f64> = p.event_times().collect();
    let mut gaps = vec![times[0]];
    gaps.extend(times.windows(2).map(|w| w[1] - w[0]));
    let n = gaps.len();
    let d = ks_one_sample(gaps, |x| -(-rate * x).exp_m1());
    assert!(d < ks_critical_one(n), "D={d}, n={n}");
}

#[test]
fn homogeneous_interarrivals_are_exponential() {
    let mut rng = derive_path_rng(SeedSpec::new(32, 0));
    let p = sample_homogeneous(0.8, 5000.0, &mut rng).unwrap();
    let times: Vec<f64> = p.event_times().collect();
    let mut gaps = vec![times[0]];
    gaps.extend(times.windows(2).map(|w| w[1] - w[0]));
    let n = gaps.len();
    let d = ks_one_sample(gaps, |x| -(-0.8 * x).exp_m1());
    assert!(d < ks_critical_one(n), "D={d}, n={n}");
}

#[test]
fn product_count_examples_and_parity() {
    let path = |k: usize| {
        JumpPath::unit_jumps(1.0, &(1..=k).map(|i| i as f64 / 20.0).collect::<Vec<_>>()).unwrap()
    };
    assert_eq!(product_count(&path(0), &path(7), 1.0).unwrap(), 0);
    assert_eq!(product_count(&path(3), &path(2), 1.0).unwrap(), 6);
    for a in 0..=10 {
        for b in 0..=10 {
            let c = product_count(&path(a), &path(b), 1.0).unwrap();
            assert_eq!(c % 2 == 1, a % 2 == 1 && b % 2 == 1);
        }
    }
    assert!(matches!(
        product_count(&path(1), &path(1), 1.5),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn wiener_unit_interval_moments() {
    let draws: Vec<f64> = (0..N)
        .map(|i| sample_wiener_increments(&[0.0, 1.0], SeedSpec::new(2024, i)).unwrap()[0])
        .collect();
    let (m, _) = mean_se(&draws);
    assert!(m.abs() <= 4.0 / (N as f64).sqrt(), "{m}");
    assert!((variance(&draws) - 1.0).abs() <= 0.05);
    // marginal law, not just moments
    let n = draws.len();
    assert!(ks_one_sample(draws, normal_cdf) < ks_critical_one(n));
}

#[test]
fn wiener_increments_are_independent_with_cell_variances() {
    let grid = [0.0, 0.25, 1.0, 1.0, 3.0];
    let n = 40_000;
    let mut cols: Vec<Vec<f64>> = (0..4).map(|_| Vec::with_capacity(n)).collect();
    for i in 0..n as u64 {
        let inc = sample_wiener_increments(&grid, SeedSpec::new(5, i)).unwrap();
        assert_eq!(inc[2], 0.0);
        for (c, v) in cols.iter_mut().zip(inc) {
            c.push(v);
        }
    }
    for (k, width) in [(0, 0.25), (1, 0.75), (3, 2.0)] {
        assert!((variance(&cols[k]) / width - 1.0).abs() <= 0.05, "cell {k}");
    }
    let corr = {
        let (a, b) = (&cols[0], &cols[1]);
        let cov = a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / n as f64;
        cov / (variance(a) * variance(b)).sqrt()
    };
    assert!(corr.abs() <= 4.0 / (n as f64).sqrt(), "corr={corr}");
    assert!(sample_wiener_increments(&[0.0, 1.0, 0.5], SeedSpec::default()).is_err());
    assert_eq!(
        sample_wiener_increments(&grid, SeedSpec::new(8, 8)).unwrap(),
        sample_wiener_increments(&grid, SeedSpec::new(8, 8)).unwrap()
    );
}

#[test]
fn derived_streams_first_draw_uniform() {
    let bins = 100;
    let streams = 10_000u64;
    let mut hist = vec![0u64; bins];
    for i in 0..streams {
        let u: f64 = derive_path_rng(SeedSpec::new(20261016, i)).random();
        hist[(u * bins as f64) as usize] += 1;
    }
    let expect = streams as f64 / bins as f64;
    let chi2: f64 = hist
        .iter()
        .map(|&h| (h as f64 - expect).powi(2) / expect)
        .sum();
    assert!(chi2 < CHI2_99_DOF_1PCT, "χ²={chi2}");
}

#[test]
fn derived_streams_pure_and_distinct() {
    let draw = |s| -> [u64; 4] {
        let mut r = derive_path_rng(s);
        [r.random(), r.random(), r.random(), r.random()]
    };
    assert_eq!(draw(SeedSpec::new(3, 0)), draw(SeedSpec::new(3, 0)));
    assert_ne!(draw(SeedSpec::new(3, 0)), draw(SeedSpec::new(3, 1)));
    assert_ne!(draw(SeedSpec::new(3, 0)), draw(SeedSpec::new(4, 0)));
}
