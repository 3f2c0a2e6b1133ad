//! Subcommand drivers. Each returns a `CliError` with the process exit code:
//! 2 for configuration and filesystem problems, 3 for numerical failures,
//! 4 for a degenerate spectral reference, 5 for a failed compensation search.

use std::path::Path;

use qdyn::fourier::{
    peak_metric, population_difference_series, scan2d, sideband_frequencies, spectrum,
};
use qdyn::model::ModelConfig;
use qdyn::sweep::{infidelity_grid, locate_magic, SweepGrid};
use qdyn::QdynError;

use crate::config::{build_fourier, build_magic, build_model, build_sweep, Config};
use crate::output;

/// A command failure: exit code plus a message for standard error.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<QdynError> for CliError {
    fn from(e: QdynError) -> Self {
        let code = match &e {
            QdynError::InvalidConfig { .. } => 2,
            QdynError::DegenerateReference => 4,
            QdynError::SearchFailure { .. } => 5,
            _ => 3,
        };
        let message = match &e {
            QdynError::SearchFailure { a, b, fa, fb } => format!(
                "search failed: no interior minimum in [{a:?}, {b:?}]: f({a:?}) = {fa:?}, f({b:?}) = {fb:?}"
            ),
            other => other.to_string(),
        };
        Self { code, message }
    }
}

fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    Config::parse(&text).map_err(CliError::config)
}

fn min_cell_line(grid: &SweepGrid) -> String {
    let mut best: Option<(usize, usize, f64)> = None;
    for (i, _) in grid.axis1.iter().enumerate() {
        for (j, _) in grid.axis2.iter().enumerate() {
            let v = grid.at(i, j);
            if v.is_nan() {
                continue;
            }
            if best.is_none_or(|(_, _, b)| v < b) {
                best = Some((i, j, v));
            }
        }
    }
    match best {
        Some((i, j, v)) => format!(
            "min {}={v:?} at {}={:?} {}={:?}",
            grid.metric_name, grid.axis1_name, grid.axis1[i], grid.axis2_name, grid.axis2[j]
        ),
        None => format!("min {}=nan (all cells failed)", grid.metric_name),
    }
}

/// Single run: time-resolved populations plus the stroboscopic fidelity.
pub fn simulate(config_path: &Path, out_dir: &Path, force: bool) -> Result<(), CliError> {
    let cfg = load_config(config_path)?;
    cfg.reject_unused_sections(&[]).map_err(CliError::config)?;
    let settings = build_model(&cfg).map_err(CliError::config)?;
    let model = settings.model;
    if settings.samples_per_period == 0 {
        return Err(CliError::config(
            "key `samples_per_period`: must be at least 1",
        ));
    }
    output::prepare_dir(out_dir, &["timeseries.csv", "fidelity.csv"], force)
        .map_err(CliError::config)?;

    let schedule = model.build_schedule()?;
    let psi0 = model.initial_state();
    let mut rows: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut row_error: Option<QdynError> = None;
    let has_intermediate = matches!(model, ModelConfig::Stirap(_));
    let final_state = schedule.sample(
        &psi0,
        model.n_periods(),
        settings.samples_per_period,
        |t, psi| {
            if row_error.is_some() {
                return;
            }
            match model.populations(psi) {
                Ok(p) => {
                    let mut cols = vec![p.p_g, p.p_e];
                    if let Some(pi) = p.p_i {
                        cols.push(pi);
                    }
                    rows.push((t, cols));
                }
                Err(e) => row_error = Some(e),
            }
        },
    )?;
    if let Some(e) = row_error {
        return Err(e.into());
    }
    let p_end = model.populations(&final_state)?;
    let mut cols = vec![p_end.p_g, p_end.p_e];
    if let Some(pi) = p_end.p_i {
        cols.push(pi);
    }
    let t_end = model.period() * model.n_periods() as f64;
    rows.push((t_end, cols));

    let fidelity = model.fidelity_series()?;
    output::write_timeseries(out_dir, &rows, has_intermediate).map_err(CliError::config)?;
    output::write_fidelity(out_dir, &fidelity).map_err(CliError::config)?;
    println!("F(nT)={:?}", fidelity[fidelity.len() - 1]);
    Ok(())
}

/// Two-parameter infidelity sweep with CSV and graymap output.
pub fn sweep(config_path: &Path, out_dir: &Path, force: bool) -> Result<(), CliError> {
    let cfg = load_config(config_path)?;
    cfg.reject_unused_sections(&["sweep"])
        .map_err(CliError::config)?;
    let settings = build_model(&cfg).map_err(CliError::config)?;
    let sw = build_sweep(&cfg, settings.model.n_periods()).map_err(CliError::config)?;
    output::prepare_dir(out_dir, &["grid.csv", "grid.pgm"], force).map_err(CliError::config)?;

    let grid = infidelity_grid(
        &settings.model,
        (&sw.axis1.name, &sw.axis1.values),
        (&sw.axis2.name, &sw.axis2.values),
        sw.n_checkpoint,
    )?;
    output::write_grid_csv(out_dir, &grid).map_err(CliError::config)?;
    output::write_grid_pgm(out_dir, &grid).map_err(CliError::config)?;
    println!("{}", min_cell_line(&grid));
    Ok(())
}

/// Spectral run: a single-point spectrum with carrier metric and sidebands,
/// or a grid of the carrier metric when axes are configured.
pub fn fourier(config_path: &Path, out_dir: &Path, force: bool) -> Result<(), CliError> {
    let cfg = load_config(config_path)?;
    cfg.reject_unused_sections(&["fourier"])
        .map_err(CliError::config)?;
    let settings = build_model(&cfg).map_err(CliError::config)?;
    let fs = build_fourier(&cfg).map_err(CliError::config)?;

    match fs.axes {
        None => {
            output::prepare_dir(out_dir, &["spectrum.csv"], force).map_err(CliError::config)?;
            let series =
                population_difference_series(&settings.model, fs.samples_per_period, fs.n_periods)?;
            let spec = spectrum(&series);
            let metric = peak_metric(&series, fs.samples_per_period, fs.n_periods)?;
            output::write_spectrum(out_dir, &spec).map_err(CliError::config)?;
            println!("peak_metric={metric:?}");
            let nu0 = 1.0 / settings.model.period();
            let bands = sideband_frequencies(&spec, nu0);
            if bands.is_empty() {
                println!("sidebands=none");
            } else {
                let list: Vec<String> = bands.iter().map(|b| format!("{b:?}")).collect();
                println!("sidebands={}", list.join(","));
            }
        }
        Some((axis1, axis2)) => {
            output::prepare_dir(out_dir, &["grid.csv", "grid.pgm"], force)
                .map_err(CliError::config)?;
            let grid = scan2d(
                &settings.model,
                (&axis1.name, &axis1.values),
                (&axis2.name, &axis2.values),
                fs.samples_per_period,
                fs.n_periods,
            )?;
            output::write_grid_csv(out_dir, &grid).map_err(CliError::config)?;
            output::write_grid_pgm(out_dir, &grid).map_err(CliError::config)?;
            println!("{}", min_cell_line(&grid));
        }
    }
    Ok(())
}

/// Bracketed search for the interaction phase minimizing long-run
/// infidelity.
pub fn magic(config_path: &Path, out_dir: &Path, force: bool) -> Result<(), CliError> {
    let cfg = load_config(config_path)?;
    cfg.reject_unused_sections(&["magic"])
        .map_err(CliError::config)?;
    let settings = build_model(&cfg).map_err(CliError::config)?;
    let ms = build_magic(&cfg, settings.model.n_periods()).map_err(CliError::config)?;
    if !(ms.hi > ms.lo) {
        return Err(CliError {
            code: 5,
            message: format!(
                "search failed: degenerate interval [{:?}, {:?}]; the bracket needs hi > lo",
                ms.lo, ms.hi
            ),
        });
    }
    output::prepare_dir(out_dir, &["magic.csv"], force).map_err(CliError::config)?;

    let r = locate_magic(&settings.model, ms.lo, ms.hi, ms.tol, ms.n_checkpoint)?;
    output::write_magic(out_dir, r.x, r.value).map_err(CliError::config)?;
    println!("magic vt2={:?} residual_infidelity={:?}", r.x, r.value);
    Ok(())
}
