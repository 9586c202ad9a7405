//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) these fan out over the
//! current rayon pool; without it they are plain sequential iterators.
//! Results always come back in input order, so callers stay deterministic
//! regardless of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Work below this many items is never split.
pub const MIN_PARALLEL_LEN: usize = 8;

/// Maps `f` over `0..len`, preserving order.
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if len >= MIN_PARALLEL_LEN {
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    (0..len).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= MIN_PARALLEL_LEN {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Applies `f` to every element in place.
pub fn for_each_mut<S, F>(items: &mut [S], f: F)
where
    S: Send,
    F: Fn(&mut S) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= MIN_PARALLEL_LEN {
            items.par_iter_mut().for_each(f);
            return;
        }
    }
    items.iter_mut().for_each(f);
}

/// Whether this build was compiled with the rayon backend.
pub fn is_parallel_build() -> bool {
    cfg!(feature = "parallel")
}
