//! Trapezoid quadrature with dyadic refinement.
//!
//! The integrands here are smooth and vanish to all orders at the interval
//! ends (bump factors), so the trapezoid rule converges superalgebraically
//! and no node/weight tables are needed. Refinement doubles the point count,
//! reusing previous evaluations, until two successive estimates agree.

use crate::{Error, Result};
use num::complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    /// Magnitude of the last refinement step, the error heuristic.
    pub est_error: f64,
    pub points: usize,
}

/// Integrates `f` over `[a, b]`, refining until successive trapezoid
/// estimates differ by less than `tol` (and at least 256 intervals were
/// used). Errors out past `max_points` evaluations.
pub fn adaptive_trapezoid<F>(f: F, a: f64, b: f64, tol: f64, max_points: usize) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    adaptive_trapezoid_min(f, a, b, tol, 256, max_points)
}

/// [`adaptive_trapezoid`] with an explicit floor on the interval count, for
/// integrands whose oscillation must be resolved before the refinement
/// heuristic can be trusted.
pub fn adaptive_trapezoid_min<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    min_intervals: usize,
    max_points: usize,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    if !(a < b) {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            est_error: 0.0,
            points: 0,
        });
    }
    let mut n: usize = 64;
    let mut h = (b - a) / n as f64;
    let mut sum = (f(a) + f(b)) * 0.5;
    for i in 1..n {
        sum += f(a + h * i as f64);
    }
    let mut estimate = sum * h;
    let mut points = n + 1;
    loop {
        // midpoints of the current intervals
        let mut mid = Complex64::new(0.0, 0.0);
        for i in 0..n {
            mid += f(a + h * (i as f64 + 0.5));
        }
        points += n;
        n *= 2;
        h *= 0.5;
        let refined = estimate * 0.5 + mid * h;
        let delta = (refined - estimate).norm();
        estimate = refined;
        if delta < tol && n >= min_intervals.max(256) {
            return Ok(QuadResult {
                value: estimate,
                est_error: delta,
                points,
            });
        }
        if points > max_points {
            return Err(Error::QuadratureDidNotConverge {
                points,
                last_delta: delta,
            });
        }
    }
}
