//! Execution strategy for the data-parallel scans.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on rayon's
//! current pool; without it both variants run sequentially. Every helper keeps
//! input order in its output, so results never depend on the strategy.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy actually fans out work.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// The result for the least index that yields `Some`.
    pub fn find_map_first<R, F>(self, range: Range<usize>, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().find_map_first(f);
        }
        range.into_iter().find_map(f)
    }

    pub fn all<F>(self, range: Range<usize>, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().all(f);
        }
        range.into_iter().all(f)
    }
}

/// Runs `f` on a pool limited to `jobs` threads. Falls back to the calling
/// thread when the pool cannot be built or parallelism is compiled out.
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(jobs) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
        {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<usize> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map(&items, |x| x * 2)[999], 1998);
            assert_eq!(
                exec.find_map_first(0..1000, |i| (i % 97 == 50).then_some(i)),
                Some(50)
            );
            assert!(exec.all(0..1000, |i| i < 1000));
        }
    }

    #[test]
    fn jobs_pool_runs_closure() {
        assert_eq!(with_jobs(Some(2), || 7), 7);
        assert_eq!(with_jobs(None, || 8), 8);
    }
}
