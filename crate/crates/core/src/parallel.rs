//! Order-preserving map over independent items.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it, or through [`map_sequential`], it runs on the calling thread.
//! Both produce the same output in the same order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving input order.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_sequential(items, f)
}

pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Sums `f` over `items`. The reduction is associative, so the result does not
/// depend on scheduling.
#[cfg(feature = "parallel")]
pub fn sum_by<T, F>(items: &[T], f: F) -> (u64, u64)
where
    T: Sync,
    F: Fn(&T) -> (u64, u64) + Sync + Send,
{
    items
        .par_iter()
        .map(f)
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[cfg(not(feature = "parallel"))]
pub fn sum_by<T, F>(items: &[T], f: F) -> (u64, u64)
where
    T: Sync,
    F: Fn(&T) -> (u64, u64) + Sync + Send,
{
    items
        .iter()
        .map(f)
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
