//! Execution-mode switch for the data-parallel inner loops.
//!
//! The hot spots (isobaric table levels, large polynomial products, check
//! suites) call [`map_collect`] instead of iterating directly. With the
//! `parallel` feature the work goes through rayon unless parallelism has
//! been switched off at runtime; without the feature the sequential path is
//! the only one compiled. Results are independent of the mode: every reduce
//! used downstream is commutative and associative over term maps.

#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Enable or disable the rayon path at runtime. No-op without the
/// `parallel` feature. Used by the benchmarks to compare both modes in a
/// single build.
pub fn set_parallel(on: bool) {
    #[cfg(feature = "parallel")]
    PARALLEL.store(on, Ordering::Relaxed);
    #[cfg(not(feature = "parallel"))]
    let _ = on;
}

/// True when work may be handed to rayon.
pub fn parallel_enabled() -> bool {
    #[cfg(feature = "parallel")]
    {
        PARALLEL.load(Ordering::Relaxed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Worker count of the rayon pool (1 without the feature).
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Map `f` over `items`, preserving order of results.
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}
