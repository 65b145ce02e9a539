//! Data-parallel plumbing. With the `parallel` feature the partition stream is
//! bridged onto rayon's pool; without it everything runs on the caller's thread.

#[cfg(feature = "parallel")]
use rayon::iter::{ParallelBridge, ParallelIterator};

/// How enumeration-heavy routines spread their per-partition work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
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

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `iter.filter_map(f).collect()`, possibly in parallel. Output order is
/// unspecified; callers sort.
pub(crate) fn filter_map_unordered<I, T, F>(execution: Execution, iter: I, f: F) -> Vec<T>
where
    I: Iterator + Send,
    I::Item: Send,
    T: Send,
    F: Fn(I::Item) -> Option<T> + Send + Sync,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => iter.par_bridge().filter_map(f).collect(),
        _ => iter.filter_map(f).collect(),
    }
}

/// Order-preserving map over a slice.
pub(crate) fn map_slice<S, T, F>(execution: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Send + Sync,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::iter::IntoParallelRefIterator;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
