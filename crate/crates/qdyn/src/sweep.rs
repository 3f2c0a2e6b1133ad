//! Parameter grids and one-dimensional searches over model parameters.

use crate::error::{QdynError, Result};
use crate::model::ModelConfig;
use rayon::prelude::*;

/// Metric evaluated over a two-parameter grid, stored row-major: the cell for
/// `(axis1[i], axis2[j])` sits at `i * axis2.len() + j`.
#[derive(Clone, Debug)]
pub struct SweepGrid {
    /// Name of the slow (row) axis.
    pub axis1_name: String,
    /// Row-axis values.
    pub axis1: Vec<f64>,
    /// Name of the fast (column) axis.
    pub axis2_name: String,
    /// Column-axis values.
    pub axis2: Vec<f64>,
    /// Metric name: `infidelity_at_nT` or `fourier_peak`.
    pub metric_name: String,
    /// Row-major metric values; failed cells hold NaN.
    pub cells: Vec<f64>,
}

impl SweepGrid {
    /// Metric value at row `i`, column `j`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.axis2.len() + j]
    }
}

/// Evenly spaced inclusive grid.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * (k as f64) / ((n - 1) as f64))
        .collect()
}

/// Evaluates a metric over the cartesian product of two named parameter
/// axes. Cells are computed independently and collected in row-major order,
/// so the result is identical for any worker count; failures map to NaN.
pub fn grid_map<F>(
    base: &ModelConfig,
    axis1: (&str, &[f64]),
    axis2: (&str, &[f64]),
    metric_name: &str,
    eval: F,
) -> Result<SweepGrid>
where
    F: Fn(&ModelConfig) -> Result<f64> + Sync,
{
    let (name1, vals1) = axis1;
    let (name2, vals2) = axis2;
    if vals1.is_empty() || vals2.is_empty() {
        return Err(QdynError::InvalidConfig {
            message: "grid axes must be non-empty".into(),
        });
    }
    {
        // Surface bad axis names before spawning the grid.
        let mut probe = base.clone();
        probe.set_param(name1, vals1[0])?;
        probe.set_param(name2, vals2[0])?;
    }
    let n2 = vals2.len();
    let cells: Vec<f64> = (0..vals1.len() * n2)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n2, idx % n2);
            let mut cfg = base.clone();
            if cfg.set_param(name1, vals1[i]).is_err() {
                return f64::NAN;
            }
            if cfg.set_param(name2, vals2[j]).is_err() {
                return f64::NAN;
            }
            eval(&cfg).unwrap_or(f64::NAN)
        })
        .collect();
    Ok(SweepGrid {
        axis1_name: name1.to_string(),
        axis1: vals1.to_vec(),
        axis2_name: name2.to_string(),
        axis2: vals2.to_vec(),
        metric_name: metric_name.to_string(),
        cells,
    })
}

/// Grid of `1 - F(n_checkpoint periods)` over two named parameter axes.
pub fn infidelity_grid(
    base: &ModelConfig,
    axis1: (&str, &[f64]),
    axis2: (&str, &[f64]),
    n_checkpoint: usize,
) -> Result<SweepGrid> {
    if n_checkpoint == 0 {
        return Err(QdynError::InvalidConfig {
            message: "n_checkpoint must be at least 1".into(),
        });
    }
    grid_map(base, axis1, axis2, "infidelity_at_nT", move |cfg| {
        let mut cfg = cfg.clone();
        cfg.set_n_periods(n_checkpoint);
        let series = cfg.fidelity_series()?;
        Ok(1.0 - series[n_checkpoint - 1])
    })
}

/// Ground fidelity after each of the first `n` periods.
pub fn fidelity_vs_n(base: &ModelConfig, n: usize) -> Result<Vec<f64>> {
    let mut cfg = base.clone();
    cfg.set_n_periods(n);
    cfg.fidelity_series()
}

/// Result of a one-dimensional minimization.
#[derive(Clone, Copy, Debug)]
pub struct MinimumResult {
    /// Location of the minimum.
    pub x: f64,
    /// Objective value at the minimum.
    pub value: f64,
}

/// Golden-section minimization of `f` over `[a, b]` to absolute tolerance
/// `tol` on `x`.
///
/// The objective must be unimodal on the bracket; if the best value sits at
/// a bracket edge the bracket contains no interior minimum and the search
/// fails, reporting the edge values.
pub fn minimize_scalar<F>(f: F, a: f64, b: f64, tol: f64) -> Result<MinimumResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(b > a) || !(tol > 0.0) {
        return Err(QdynError::InvalidConfig {
            message: "minimization needs bounds with b > a and a positive tolerance".into(),
        });
    }
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let fa = f(a)?;
    let fb = f(b)?;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let (x, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if fa <= value || fb <= value {
        return Err(QdynError::SearchFailure { a, b, fa, fb });
    }
    Ok(MinimumResult { x, value })
}

/// Locates an interaction phase `v * t2` inside `[a, b]` that minimizes the
/// infidelity after `n_checkpoint` periods.
pub fn locate_magic(
    base: &ModelConfig,
    a: f64,
    b: f64,
    tol: f64,
    n_checkpoint: usize,
) -> Result<MinimumResult> {
    minimize_scalar(
        |phase| {
            let mut cfg = base.clone();
            cfg.set_param("vt2", phase)?;
            cfg.set_n_periods(n_checkpoint);
            let series = cfg.fidelity_series()?;
            Ok(1.0 - series[n_checkpoint - 1])
        },
        a,
        b,
        tol,
    )
}
