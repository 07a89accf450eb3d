//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) the heavy inner loops fan out over
//! rayon; without it the same entry points run sequentially. Results are
//! collected in input order, so output never depends on worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps `f` over an integer range, preserving order.
#[cfg(feature = "parallel")]
pub fn map_range<R, F>(lo: i64, hi: i64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(i64) -> R + Sync + Send,
{
    (lo..hi).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(lo: i64, hi: i64, f: F) -> Vec<R>
where
    F: Fn(i64) -> R,
{
    (lo..hi).map(f).collect()
}
