//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature enabled the work is spread over the rayon pool
//! when `parallel` is requested; otherwise it runs on the calling thread. Output
//! order always matches input order so reductions stay deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel && items.len() > 1 {
            return items.par_iter().map(f).collect();
        }
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Whether this build can run anything in parallel.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
