//! Extrema of circle weights and of ratios of weights.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::measures::{golden_min, WeightedCircle, WEIGHT_GRID_POINTS};

/// Tolerance in θ for the golden-section refinement.
pub const REFINE_TOL: f64 = 1e-9;

/// (min, max) of a continuous 2π-periodic function: grid scan, then a
/// golden-section search in the bracket around each grid extremum.
pub fn periodic_extrema(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let h = 2.0 * PI / WEIGHT_GRID_POINTS as f64;
    let grid: Vec<f64> = (0..WEIGHT_GRID_POINTS).map(|i| f(i as f64 * h)).collect();
    let argmin = (0..grid.len())
        .min_by(|&a, &b| grid[a].total_cmp(&grid[b]))
        .expect("non-empty grid");
    let argmax = (0..grid.len())
        .max_by(|&a, &b| grid[a].total_cmp(&grid[b]))
        .expect("non-empty grid");
    let t_min = argmin as f64 * h;
    let t_max = argmax as f64 * h;
    let (_, lo) = golden_min(&f, t_min - h, t_min + h, REFINE_TOL);
    let (_, neg_hi) = golden_min(|t| -f(t), t_max - h, t_max + h, REFINE_TOL);
    (lo.min(grid[argmin]), (-neg_hi).max(grid[argmax]))
}

/// (ess inf, ess sup) of the weight.
pub fn weight_extrema(w: &WeightedCircle) -> (f64, f64) {
    periodic_extrema(|t| w.eval(t))
}

/// (ess inf, ess sup) of w_num / w_den on the unit circle. The denominator
/// must stay positive on the grid.
pub fn esd_density_check(w_num: &WeightedCircle, w_den: &WeightedCircle) -> Result<(f64, f64)> {
    let h = 2.0 * PI / WEIGHT_GRID_POINTS as f64;
    if let Some(i) = (0..WEIGHT_GRID_POINTS)
        .find(|&i| w_den.eval(i as f64 * h).is_nan() || w_den.eval(i as f64 * h) <= 0.0)
    {
        return Err(Error::DenominatorVanishes(i as f64 * h));
    }
    let (lo, den_max) = weight_extrema(w_den);
    if lo.is_nan() || lo <= 0.0 || !den_max.is_finite() {
        return Err(Error::DenominatorVanishes(f64::NAN));
    }
    Ok(periodic_extrema(|t| w_num.eval(t) / w_den.eval(t)))
}
