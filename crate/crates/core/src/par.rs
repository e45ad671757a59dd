//! Data-parallel mapping with a sequential fallback.
//!
//! With the `parallel` feature the maps below run on the rayon pool unless
//! parallelism has been switched off at runtime. Output order always matches
//! input order, so results are identical either way.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Turns the parallel code paths on or off for the whole process.
pub fn set_parallel(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::SeqCst)
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// First index (in input order) whose item yields `Some`, with that value.
pub fn find_first<T, R, F>(items: &[T], f: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items
            .par_iter()
            .enumerate()
            .filter_map(|(i, x)| f(x).map(|r| (i, r)))
            .min_by_key(|(i, _)| *i);
    }
    items.iter().enumerate().find_map(|(i, x)| f(x).map(|r| (i, r)))
}
