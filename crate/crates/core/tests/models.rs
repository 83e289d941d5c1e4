mod common;

use common::*;
use indproc_core::analytics::{estimate_functional, msd_integral};
use indproc_core::indicator::{DriverSpec, IndicatorSpec, Phase};
use indproc_core::models::{
    constant, simulate_delay_diffusion, simulate_kac, simulate_switching_sde,
    simulate_two_subspace, DelayDiffusionModel, DelayDiffusionParams, DiffusionIndicator, KacModel,
    KacParams, PathModel, SwitchingForm, SwitchingSdeSpec, TwoSubspaceModel, TwoSubspaceParams,
};
use indproc_core::montecarlo::Sequential;
use indproc_core::rng::SeedSpec;
use indproc_core::timefn::TimeFunction;
use rand_distr::{Distribution, StandardNormal};

const N: u64 = 100_000;

/// Per-path values of component `k` at each of `times`.
fn samples<M: PathModel>(model: &M, times: &[f64], n: u64, seed: u64) -> Vec<Vec<f64>> {
    let dim = model.components();
    let mut out = vec![Vec::with_capacity(n as usize); times.len() * dim];
    let mut buf = vec![0.0; times.len() * dim];
    for i in 0..n {
        model
            .sample_into(times, &mut SeedSpec::new(seed, i).rng(), &mut buf)
            .unwrap();
        for (col, v) in out.iter_mut().zip(&buf) {
            col.push(*v);
        }
    }
    out
}

#[test]
fn kac_mean_position() {
    let model = KacModel::new(
        KacParams {
            speed: 1.0,
            rate: 1.0,
        },
        5.0,
    );
    let times = [0.5, 1.0, 2.0, 5.0];
    let stats = estimate_functional(&model, &times, 4, N, 41, &Sequential, |s, out| {
        out.copy_from_slice(s)
    })
    .unwrap();
    for (k, &t) in times.iter().enumerate() {
        let expect = -(-2.0 * t).exp_m1() / 2.0;
        assert!(
            (stats.mean[k] - expect).abs() <= 4.0 * stats.stderr[k],
            "t={t}"
        );
    }
}

#[test]
fn kac_bound_is_exact() {
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.05).collect();
    for (i, (c, rate)) in [(1.0, 1.0), (0.3, 5.0), (2.7, 0.4)].into_iter().enumerate() {
        for p in 0..1000 {
            let tr = simulate_kac(
                KacParams { speed: c, rate },
                5.0,
                &grid,
                SeedSpec::new(i as u64, p),
            )
            .unwrap();
            assert_eq!(tr.at(0), &[0.0]);
            for (x, &t) in tr.component(0).zip(&grid) {
                assert!(x.abs() <= c * t);
            }
        }
    }
}

#[test]
fn delay_without_events_is_brownian() {
    let model = DelayDiffusionModel::new(DelayDiffusionParams::single(0.0, 1.0), 2.0);
    let times = [0.5, 1.0, 2.0];
    let cols = samples(&model, &times, N, 42);
    for (k, &t) in times.iter().enumerate() {
        let y = &cols[2 * k + 1];
        let (m, se) = mean_se(y);
        assert!(m.abs() <= 4.0 * se, "t={t}");
        assert!((variance(y) / t - 1.0).abs() <= 0.05, "t={t}");
    }
    // two-sample KS against directly drawn N(0, 2)
    let n = 20_000;
    let y: Vec<f64> = cols[5][..n].to_vec();
    let mut rng = SeedSpec::new(43, 0).rng();
    let direct: Vec<f64> = (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            2f64.sqrt() * z
        })
        .collect();
    let d = ks_two_sample(y, direct);
    assert!(d < ks_critical_two(n, n), "D={d}");
}

#[test]
fn delay_drift_is_added_deterministically() {
    let params = DelayDiffusionParams {
        drift: TimeFunction::tabulated(vec![0.0, 1.0, 2.0], vec![1.0, -1.0, 0.5]).unwrap(),
        ..DelayDiffusionParams::single(1.0, 0.7)
    };
    let grid = [0.0, 0.3, 1.0, 1.6, 2.0];
    for i in 0..50 {
        let tr =
            simulate_delay_diffusion(params.clone(), 2.0, &grid, SeedSpec::new(44, i)).unwrap();
        assert_eq!(tr.at(0), &[0.0, 0.0]);
        for (step, &t) in grid.iter().enumerate() {
            let row = tr.at(step);
            assert!((row[0] - row[1] - params.drift.integral(0.0, t)).abs() < 1e-14);
        }
    }
}

#[test]
fn delay_product_driver_msd() {
    let model = DelayDiffusionModel::new(DelayDiffusionParams::product(1.0, 1.0, 1.0), 2.0);
    let times = [0.5, 1.0, 2.0];
    let stats = estimate_functional(&model, &times, 3, N, 45, &Sequential, |s, out| {
        for k in 0..3 {
            out[k] = s[2 * k + 1] * s[2 * k + 1];
        }
    })
    .unwrap();
    for (k, &t) in times.iter().enumerate() {
        let expect = msd_integral(1.0, 1.0, 1.0, t).unwrap();
        assert!(
            (stats.mean[k] - expect).abs() <= 4.0 * stats.stderr[k],
            "t={t}: {} vs {expect}",
            stats.mean[k]
        );
    }
}

#[test]
fn two_subspace_variance_split_and_conservation() {
    let b = 1.3;
    let model = TwoSubspaceModel::new(TwoSubspaceParams { b, rate: 1.0 }, 2.0);
    let times = [1.0, 2.0];
    let cols = samples(&model, &times, N, 46);
    for (k, &t) in times.iter().enumerate() {
        let (x, y) = (&cols[3 * k], &cols[3 * k + 1]);
        let total = variance(x) + variance(y);
        assert!((total / (b * b * t) - 1.0).abs() <= 0.05, "t={t}");
        let xy: Vec<f64> = x.iter().zip(y).map(|(a, c)| a * c).collect();
        let (cov, se) = mean_se(&xy);
        assert!(cov.abs() <= 4.0 * se, "t={t}: cov={cov}");
    }
    let grid: Vec<f64> = (0..=40).map(|i| i as f64 * 0.05).collect();
    for i in 0..500 {
        let tr = simulate_two_subspace(
            TwoSubspaceParams { b, rate: 3.0 },
            2.0,
            &grid,
            SeedSpec::new(47, i),
        )
        .unwrap();
        for step in 0..grid.len() {
            let r = tr.at(step);
            assert!((r[0] + r[1] - b * r[2]).abs() <= 1e-10 * (b * r[2]).abs().max(1.0));
        }
    }
}

fn kac_euler(rate: f64, c: f64, dt: f64, horizon: f64) -> SwitchingSdeSpec {
    SwitchingSdeSpec {
        form: SwitchingForm::Mixed {
            drift_indicator: IndicatorSpec::new(DriverSpec::poisson(rate), Phase::Plus),
            diffusion_indicator: DiffusionIndicator::SameAsDrift,
        },
        drift: [constant(vec![c]), constant(vec![-c])],
        diffusion: [constant(vec![0.0]), constant(vec![0.0])],
        dt,
        horizon,
        initial: vec![0.0],
    }
}

#[test]
fn euler_identical_regimes_is_brownian() {
    let b = 0.8;
    let spec = SwitchingSdeSpec {
        form: SwitchingForm::Mixed {
            drift_indicator: IndicatorSpec::new(DriverSpec::poisson(1.0), Phase::Plus),
            diffusion_indicator: DiffusionIndicator::Independent(IndicatorSpec::new(
                DriverSpec::poisson(2.0),
                Phase::Plus,
            )),
        },
        drift: [constant(vec![0.0]), constant(vec![0.0])],
        diffusion: [constant(vec![b]), constant(vec![b])],
        dt: 0.01,
        horizon: 1.0,
        initial: vec![0.0],
    };
    let cols = samples(&spec, &[1.0], N, 48);
    assert!((variance(&cols[0]) / (b * b) - 1.0).abs() <= 0.05);
}

#[test]
fn euler_kac_matches_exact_mean() {
    let (rate, c, dt, t) = (1.0, 1.0, 1e-3, 1.0);
    let spec = kac_euler(rate, c, dt, t);
    let stats =
        estimate_functional(&spec, &[t], 1, 20_000, 49, &Sequential, |s, o| o[0] = s[0]).unwrap();
    let exact = c * -(-2.0 * rate * t).exp_m1() / (2.0 * rate);
    let tol = (4.0 * stats.stderr[0]).max(2.0 * c * dt * rate * t);
    assert!(
        (stats.mean[0] - exact).abs() <= tol,
        "{} vs {exact}",
        stats.mean[0]
    );
}

#[test]
fn euler_error_shrinks_with_dt() {
    // common random numbers: both integrators consume the driver first
    let (rate, c, t) = (1.0, 1.0, 1.0);
    let exact = KacModel::new(KacParams { speed: c, rate }, t);
    let mut errs = Vec::new();
    for dt in [1e-2, 1e-3] {
        let euler = kac_euler(rate, c, dt, t);
        let mut total = 0.0;
        for i in 0..2000 {
            let (mut a, mut b) = ([0.0], [0.0]);
            exact
                .sample_into(&[t], &mut SeedSpec::new(50, i).rng(), &mut a)
                .unwrap();
            euler
                .sample_into(&[t], &mut SeedSpec::new(50, i).rng(), &mut b)
                .unwrap();
            total += (a[0] - b[0]).abs();
        }
        errs.push(total / 2000.0);
    }
    assert!(errs[1] < errs[0], "{errs:?}");
    assert!(errs[1] > 0.0);
}

#[test]
fn euler_no_switching_linear_drift() {
    // dx = (1 + t) dt, χ ≡ 1: Euler is exact up to the ½dt·t bias of left sums
    let spec = SwitchingSdeSpec {
        form: SwitchingForm::Mixed {
            drift_indicator: IndicatorSpec::new(DriverSpec::poisson(0.0), Phase::Plus),
            diffusion_indicator: DiffusionIndicator::SameAsDrift,
        },
        drift: [Box::new(|_, t, out| out[0] = 1.0 + t), constant(vec![0.0])],
        diffusion: [constant(vec![0.0]), constant(vec![0.0])],
        dt: 1e-3,
        horizon: 2.0,
        initial: vec![0.5],
    };
    let tr = simulate_switching_sde(&spec, SeedSpec::new(51, 0)).unwrap();
    assert_eq!(tr.at(0), &[0.5]);
    let last = *tr.state.last().unwrap();
    let exact = 0.5 + 2.0 + 2.0;
    assert!(
        (last - exact).abs() <= 0.5 * spec.dt * 2.0 + 1e-12,
        "{last}"
    );
}
