use indproc_core::montecarlo::ChunkExecutor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Runs Monte Carlo chunks on a dedicated rayon pool.
///
/// Chunk results come back in index order, so the thread count never changes
/// the output.
pub struct RayonExecutor {
    pool: ThreadPool,
}

impl RayonExecutor {
    /// `None` or `Some(0)` uses one thread per logical CPU.
    pub fn new(threads: Option<usize>) -> Self {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(n) = threads.filter(|&n| n > 0) {
            builder = builder.num_threads(n);
        }
        Self {
            pool: builder.build().expect("failed to start the worker pool"),
        }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl ChunkExecutor for RayonExecutor {
    fn map_chunks<T, F>(&self, n_chunks: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool
            .install(|| (0..n_chunks).into_par_iter().map(job).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use indproc_core::montecarlo::{run_paths, Sequential};
    use rand::Rng;

    #[test]
    fn thread_count_does_not_change_results() {
        let job = |rng: &mut indproc_core::rng::PathRng, out: &mut [f64]| {
            let u: f64 = rng.random();
            out[0] = u;
            out[1] = u * u;
            Ok(())
        };
        let seq = run_paths(&Sequential, 10_000, 3, 2, job).unwrap();
        for threads in [1, 2, 4, 7] {
            let par = run_paths(&RayonExecutor::new(Some(threads)), 10_000, 3, 2, job).unwrap();
            assert_eq!(par, seq);
        }
    }
}
