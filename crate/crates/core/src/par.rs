//! Sample-level data parallelism.
//!
//! With the `parallel` feature the harness maps samples on rayon; without it
//! (or with [`Execution::Sequential`]) the same closure runs in a plain loop.
//! Results are always collected in index order.

/// How sample batches are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon work stealing; identical to `Sequential` without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `(0..n).map(f)` collected in index order.
pub fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Runs `f` with at most `threads` workers when given.
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(n) = threads.filter(|&n| n > 0) {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            return pool.install(f);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let f = |i: usize| (i * i) as u64;
        let a = map_indexed(1000, Execution::Sequential, f);
        let b = map_indexed(1000, Execution::Parallel, f);
        assert_eq!(a, b);
        assert_eq!(a[31], 961);
    }

    #[test]
    fn thread_cap_runs_closure() {
        assert_eq!(with_threads(Some(2), || map_indexed(10, Execution::Parallel, |i| i).len()), 10);
        assert_eq!(with_threads(None, || 5), 5);
    }
}
