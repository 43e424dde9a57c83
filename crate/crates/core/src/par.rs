//! Thin data-parallel layer.
//!
//! With the `parallel` feature the helpers fan out over rayon; without it, or
//! inside [`with_jobs`]`(1, ..)`, they run in order on the calling thread.
//! Results are always returned in input order so callers stay deterministic.

use std::cell::Cell;
use std::ops::Range;

thread_local! {
    static SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// True when helpers called from this thread will not spawn work.
pub fn is_sequential() -> bool {
    !cfg!(feature = "parallel") || SEQUENTIAL.with(|s| s.get())
}

/// Runs `f` with the given worker count. `1` forces sequential execution,
/// `0` uses the global pool.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs == 1 {
        let prev = SEQUENTIAL.with(|s| s.replace(true));
        let out = f();
        SEQUENTIAL.with(|s| s.set(prev));
        return out;
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(f);
        }
    }
    f()
}

pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub fn map_range<R: Send>(range: Range<usize>, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

pub fn all<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        use rayon::prelude::*;
        return items.par_iter().all(pred);
    }
    items.iter().all(pred)
}

/// First item (in input order) satisfying `pred`.
pub fn find_first<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> Option<&T> {
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        use rayon::prelude::*;
        return items.par_iter().find_first(|x| pred(x));
    }
    items.iter().find(|x| pred(x))
}

/// Splits `0..len` into roughly `parts` contiguous ranges.
pub fn chunks(len: u64, parts: u64) -> Vec<Range<u64>> {
    let parts = parts.max(1).min(len.max(1));
    let step = len.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step).min(len)..((i + 1) * step).min(len))
        .filter(|r| !r.is_empty())
        .collect()
}

pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    if !is_sequential() {
        return rayon::current_num_threads();
    }
    1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_parallel_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = with_jobs(1, || map(&xs, |x| x * x));
        let b = with_jobs(0, || map(&xs, |x| x * x));
        assert_eq!(a, b);
        assert!(with_jobs(1, is_sequential));
    }

    #[test]
    fn chunks_cover_range() {
        let cs = chunks(10, 3);
        assert_eq!(cs, vec![0..4, 4..8, 8..10]);
        assert!(chunks(0, 4).is_empty());
        assert_eq!(chunks(2, 8).len(), 2);
    }
}
