//! Spectral analysis of stroboscopically sampled population differences.
//!
//! A compensated drive repeats its population trace exactly every period, so
//! all spectral weight stays on the stroboscopic carrier line at `1/T` and
//! its harmonics. Residual errors drain carrier weight into nearby
//! sidebands; the peak metric measures that drain against an ideally
//! periodic reference built from the trace's own first period.

use crate::error::{QdynError, Result};
use crate::model::ModelConfig;
use crate::sweep::{grid_map, SweepGrid};
use num_complex::Complex;
use rustfft::FftPlanner;

/// Minimum samples per period accepted by the sampling routines.
pub const MIN_SAMPLES_PER_PERIOD: usize = 16;
/// Minimum sampled periods accepted by the sampling routines.
pub const MIN_SAMPLED_PERIODS: usize = 8;
/// Default samples per period.
pub const DEFAULT_SAMPLES_PER_PERIOD: usize = 64;
/// Default sampled periods.
pub const DEFAULT_SAMPLED_PERIODS: usize = 64;
/// Reference carrier magnitudes below this are degenerate.
pub const REFERENCE_FLOOR: f64 = 1e-9;
/// Absolute magnitude floor for sideband candidates.
pub const SIDEBAND_FLOOR: f64 = 1e-9;

/// Uniformly sampled real time series.
#[derive(Clone, Debug)]
pub struct TimeSeries {
    /// Time of the first sample.
    pub t0: f64,
    /// Sample spacing.
    pub dt: f64,
    /// Sample values.
    pub values: Vec<f64>,
}

/// One-sided magnitude spectrum.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Frequency spacing between bins.
    pub dnu: f64,
    /// Normalized magnitudes `|X_k| / M` for `k = 0 ..= M/2`.
    pub magnitudes: Vec<f64>,
}

impl Spectrum {
    /// Frequency of bin `k`.
    pub fn frequency(&self, k: usize) -> f64 {
        self.dnu * k as f64
    }
}

/// Samples the ground-excited population difference at `samples_per_period`
/// evenly spaced points over `n_periods` periods, starting at `t = 0`.
pub fn population_difference_series(
    model: &ModelConfig,
    samples_per_period: usize,
    n_periods: usize,
) -> Result<TimeSeries> {
    if samples_per_period < MIN_SAMPLES_PER_PERIOD {
        return Err(QdynError::InvalidConfig {
            message: format!("samples_per_period must be at least {MIN_SAMPLES_PER_PERIOD}"),
        });
    }
    if n_periods < MIN_SAMPLED_PERIODS {
        return Err(QdynError::InvalidConfig {
            message: format!("sampled n_periods must be at least {MIN_SAMPLED_PERIODS}"),
        });
    }
    let schedule = model.build_schedule()?;
    let psi0 = model.initial_state();
    let mut values = Vec::with_capacity(samples_per_period * n_periods);
    let mut err = None;
    schedule.sample(&psi0, n_periods, samples_per_period, |_, psi| {
        match model.population_difference(psi) {
            Ok(x) => values.push(x),
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(TimeSeries {
        t0: 0.0,
        dt: schedule.period() / samples_per_period as f64,
        values,
    })
}

/// Full normalized DFT magnitudes `|X_k| / M` for `k = 0 .. M`.
pub fn full_magnitudes(series: &TimeSeries) -> Vec<f64> {
    let m = series.values.len();
    let mut buf: Vec<Complex<f64>> = series
        .values
        .iter()
        .map(|&x| Complex::new(x, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter().map(|x| x.norm() * scale).collect()
}

/// One-sided magnitude spectrum of a series.
pub fn spectrum(series: &TimeSeries) -> Spectrum {
    let m = series.values.len();
    let mut magnitudes = full_magnitudes(series);
    magnitudes.truncate(m / 2 + 1);
    Spectrum {
        dnu: 1.0 / (series.dt * m as f64),
        magnitudes,
    }
}

/// Tiles the first period of a series across its whole length, producing the
/// exactly periodic reference trace.
fn tiled_reference(series: &TimeSeries, samples_per_period: usize, n_periods: usize) -> TimeSeries {
    let mut values = Vec::with_capacity(samples_per_period * n_periods);
    for _ in 0..n_periods {
        values.extend_from_slice(&series.values[..samples_per_period]);
    }
    TimeSeries {
        t0: series.t0,
        dt: series.dt,
        values,
    }
}

/// Carrier-line compensation metric of a sampled population difference.
///
/// Compares the magnitude at the stroboscopic carrier bin (frequency `1/T`)
/// against the same bin of the ideally periodic reference obtained by tiling
/// the trace's own first period: `metric = max(0, 1 - m / m_ref)`. An exactly
/// periodic trace scores 0; error-driven drift drains the carrier and raises
/// the metric toward 1. A reference carrier below [`REFERENCE_FLOOR`] leaves
/// the metric undefined.
pub fn peak_metric(
    series: &TimeSeries,
    samples_per_period: usize,
    n_periods: usize,
) -> Result<f64> {
    if series.values.len() != samples_per_period * n_periods {
        return Err(QdynError::DimensionMismatch {
            context: format!(
                "series length {} for {} samples over {} periods",
                series.values.len(),
                samples_per_period,
                n_periods
            ),
        });
    }
    let carrier = n_periods;
    let mags = full_magnitudes(series);
    let reference = tiled_reference(series, samples_per_period, n_periods);
    let ref_mags = full_magnitudes(&reference);
    let m_ref = ref_mags[carrier];
    if m_ref < REFERENCE_FLOOR {
        return Err(QdynError::DegenerateReference);
    }
    Ok((1.0 - mags[carrier] / m_ref).max(0.0))
}

/// Frequencies of the two strongest sideband peaks around the carrier
/// frequency `nu0`, in ascending order.
///
/// Candidates are local maxima of the one-sided spectrum strictly inside
/// `(nu0/2, 3 nu0/2)`, excluding the carrier bin itself and anything below
/// [`SIDEBAND_FLOOR`]. An exactly periodic trace has no sidebands and yields
/// an empty list.
pub fn sideband_frequencies(spec: &Spectrum, nu0: f64) -> Vec<f64> {
    let carrier = (nu0 / spec.dnu).round() as usize;
    let lo = nu0 / 2.0;
    let hi = 1.5 * nu0;
    let mags = &spec.magnitudes;
    let mut candidates: Vec<(f64, usize)> = Vec::new();
    for k in 1..mags.len().saturating_sub(1) {
        if k == carrier {
            continue;
        }
        let nu = spec.frequency(k);
        if nu <= lo || nu >= hi {
            continue;
        }
        if mags[k] < SIDEBAND_FLOOR {
            continue;
        }
        if mags[k] > mags[k - 1] && mags[k] >= mags[k + 1] {
            candidates.push((mags[k], k));
        }
    }
    candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut bins: Vec<usize> = candidates.iter().take(2).map(|&(_, k)| k).collect();
    bins.sort_unstable();
    bins.into_iter().map(|k| spec.frequency(k)).collect()
}

/// Predicted sideband pair `nu0 * (1 -+ eps)` for a fractional pulse-area
/// error `eps`; the split grows linearly with the error.
pub fn predicted_sidebands(nu0: f64, eps: f64) -> (f64, f64) {
    (nu0 * (1.0 - eps.abs()), nu0 * (1.0 + eps.abs()))
}

/// Peak-metric grid over two named parameter axes.
///
/// Cells where the metric is undefined or the integration fails hold NaN.
pub fn scan2d(
    base: &ModelConfig,
    axis1: (&str, &[f64]),
    axis2: (&str, &[f64]),
    samples_per_period: usize,
    n_periods: usize,
) -> Result<SweepGrid> {
    grid_map(base, axis1, axis2, "fourier_peak", move |cfg| {
        let series = population_difference_series(cfg, samples_per_period, n_periods)?;
        peak_metric(&series, samples_per_period, n_periods)
    })
}
