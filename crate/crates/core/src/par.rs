//! Tiny dispatch layer between rayon and plain iterators.
//!
//! Both entry points are order-deterministic: `first_hit` returns the
//! match with the lowest index regardless of thread scheduling, and
//! `map_indexed` preserves index order in its output. Compiled without
//! the `parallel` feature they lower to ordinary sequential loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First `Some` in index order over `0..count`.
pub(crate) fn first_hit<R, F>(count: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).find_map(f)
    }
}

/// `f` applied to `0..count`, results in index order.
pub(crate) fn map_indexed<R, F>(count: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}
