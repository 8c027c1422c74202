//! Thin shims over rayon so every data-parallel loop has a sequential
//! fallback when the `parallel` feature is off. Callers are responsible for
//! making merges order-independent (sorting before dedup).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> R + Send + Sync,
) -> Vec<R> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range<R: Send>(n: usize, f: impl Fn(usize) -> R + Send + Sync) -> Vec<R> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<R>(n: usize, f: impl Fn(usize) -> R) -> Vec<R> {
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn sort<T: Ord + Send>(v: &mut [T]) {
    v.par_sort_unstable();
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn sort<T: Ord>(v: &mut [T]) {
    v.sort_unstable();
}
