//! Grid-point mapping, parallel when the `parallel` feature is on.
//!
//! Sweep points are independent pure computations, so order-preserving
//! collection gives bit-identical results for the parallel and sequential
//! paths.

#[cfg(feature = "parallel")]
pub fn map_grid<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    use rayon::prelude::*;
    xs.par_iter().map(|&x| f(x)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_grid<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    map_grid_serial(xs, f)
}

/// Always-sequential mapping; the reference path for determinism checks
/// and benchmarks.
pub fn map_grid_serial<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync,
{
    xs.iter().map(|&x| f(x)).collect()
}
