//! Path-parallel Monte Carlo with an order-deterministic reduction.
//!
//! Paths are grouped into fixed chunks of [`CHUNK_PATHS`]. Each chunk
//! accumulates its own moments sequentially; the chunk results are merged in
//! chunk order. Since every path's generator depends only on
//! `(master_seed, path_index)`, the output is bitwise identical for any
//! [`ChunkExecutor`] that returns chunk results in index order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Result};
use crate::math;
use crate::rng::{derive_path_rng, PathRng, SeedSpec};

pub const CHUNK_PATHS: u64 = 1024;

/// Runs independent chunk jobs and returns their results in index order.
pub trait ChunkExecutor: Sync {
    fn map_chunks<T, F>(&self, n_chunks: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every chunk on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl ChunkExecutor for Sequential {
    fn map_chunks<T, F>(&self, n_chunks: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n_chunks).map(job).collect()
    }
}

/// Streaming mean and sum of squared deviations for a vector of observables.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    pub fn new(width: usize) -> Self {
        Self {
            count: 0,
            mean: vec![0.0; width],
            m2: vec![0.0; width],
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn push(&mut self, sample: &[f64]) {
        self.count += 1;
        let n = self.count as f64;
        for ((m, s), &x) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(sample) {
            let delta = x - *m;
            *m += delta / n;
            *s += delta * (x - *m);
        }
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        for k in 0..self.mean.len() {
            let delta = other.mean[k] - self.mean[k];
            self.mean[k] += delta * (nb / n);
            self.m2[k] += other.m2[k] + delta * delta * (na * nb / n);
        }
        self.count += other.count;
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// Standard error of each mean: sample standard deviation over `√n`.
    pub fn stderr(&self) -> Vec<f64> {
        if self.count < 2 {
            return vec![f64::NAN; self.mean.len()];
        }
        let n = self.count as f64;
        self.m2
            .iter()
            .map(|&s| math::sqrt(s.max(0.0) / (n - 1.0) / n))
            .collect()
    }
}

/// Means and standard errors of per-path observables.
#[derive(Debug, Clone, PartialEq)]
pub struct PathStats {
    pub n_paths: u64,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

/// Simulates `n_paths` paths and averages the `width` observables each path
/// writes into its output buffer (zeroed before every path).
pub fn run_paths<E, F>(
    exec: &E,
    n_paths: u64,
    master_seed: u64,
    width: usize,
    path: F,
) -> Result<PathStats>
where
    E: ChunkExecutor,
    F: Fn(&mut PathRng, &mut [f64]) -> Result<()> + Sync + Send,
{
    if n_paths < 2 {
        return Err(param("n_paths", "need at least two paths"));
    }
    let n_chunks = n_paths.div_ceil(CHUNK_PATHS) as usize;
    let chunks = exec.map_chunks(n_chunks, |c| -> Result<Moments> {
        let first = c as u64 * CHUNK_PATHS;
        let last = (first + CHUNK_PATHS).min(n_paths);
        let mut moments = Moments::new(width);
        let mut buf = vec![0.0; width];
        for path_index in first..last {
            let mut rng = derive_path_rng(SeedSpec::new(master_seed, path_index));
            buf.fill(0.0);
            path(&mut rng, &mut buf)?;
            moments.push(&buf);
        }
        Ok(moments)
    });
    let mut total = Moments::new(width);
    for chunk in chunks {
        total.merge(&chunk?);
    }
    Ok(PathStats {
        n_paths,
        stderr: total.stderr(),
        mean: total.mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Splits chunks into two interleaved halves and stitches them back,
    /// standing in for an executor with a different scheduling.
    struct Interleaved;

    impl ChunkExecutor for Interleaved {
        fn map_chunks<T, F>(&self, n: usize, job: F) -> Vec<T>
        where
            T: Send,
            F: Fn(usize) -> T + Sync + Send,
        {
            let mut odd: Vec<(usize, T)> = (0..n)
                .rev()
                .filter(|i| i % 2 == 1)
                .map(|i| (i, job(i)))
                .collect();
            let mut even: Vec<(usize, T)> =
                (0..n).filter(|i| i % 2 == 0).map(|i| (i, job(i))).collect();
            even.append(&mut odd);
            even.sort_by_key(|(i, _)| *i);
            even.into_iter().map(|(_, t)| t).collect()
        }
    }

    #[test]
    fn moments_match_two_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| libm::sin(i as f64) * 3.0 + 1.0).collect();
        let mut m = Moments::new(1);
        for x in &xs {
            m.push(&[*x]);
        }
        let mean = xs.iter().sum::<f64>() / 1000.0;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / 999.0;
        assert!((m.mean()[0] - mean).abs() < 1e-13);
        assert!((m.stderr()[0] - math::sqrt(var / 1000.0)).abs() < 1e-13);

        let mut a = Moments::new(1);
        let mut b = Moments::new(1);
        xs[..300].iter().for_each(|x| a.push(&[*x]));
        xs[300..].iter().for_each(|x| b.push(&[*x]));
        a.merge(&b);
        assert!((a.mean()[0] - mean).abs() < 1e-13);
        assert!((a.stderr()[0] - m.stderr()[0]).abs() < 1e-13);
    }

    #[test]
    fn constant_observable_is_exact() {
        let stats = run_paths(&Sequential, 5000, 1, 2, |_, out| {
            out[0] = 1.0;
            Ok(())
        })
        .unwrap();
        assert_eq!(stats.mean, vec![1.0, 0.0]);
        assert_eq!(stats.stderr, vec![0.0, 0.0]);
    }

    #[test]
    fn executor_does_not_change_results() {
        let job = |rng: &mut PathRng, out: &mut [f64]| {
            let u: f64 = rng.random();
            out[0] = u;
            out[1] = u * u;
            Ok(())
        };
        let a = run_paths(&Sequential, 10_000, 77, 2, job).unwrap();
        let b = run_paths(&Interleaved, 10_000, 77, 2, job).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn too_few_paths() {
        assert!(run_paths(&Sequential, 1, 0, 1, |_, _| Ok(())).is_err());
    }
}
