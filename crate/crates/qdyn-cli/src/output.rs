//! Deterministic output emission: CSV tables with 17 significant digits,
//! plain portable graymaps for grid metrics, and an overwrite guard so
//! existing results are never silently clobbered.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qdyn::fourier::Spectrum;
use qdyn::sweep::SweepGrid;

/// Formats a value for CSV: 17 significant digits, or the literal token
/// `nan` for failed cells.
pub fn csv_value(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Creates the output directory if absent and checks the overwrite guard
/// for each file the command is about to write.
pub fn prepare_dir(dir: &Path, files: &[&str], force: bool) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create output directory: {e}"))?;
    if !force {
        for name in files {
            let path = dir.join(name);
            if path.exists() {
                return Err(format!(
                    "output file {} exists; pass --force to overwrite",
                    path.display()
                ));
            }
        }
    }
    Ok(())
}

fn write_atomic(path: &PathBuf, bytes: &[u8]) -> Result<(), String> {
    let mut f =
        fs::File::create(path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    f.write_all(bytes)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Time-series table: one row per sample, populations per column.
pub fn write_timeseries(
    dir: &Path,
    rows: &[(f64, Vec<f64>)],
    has_intermediate: bool,
) -> Result<(), String> {
    let mut out = String::new();
    out.push_str(if has_intermediate {
        "t,P_g,P_e,P_i\n"
    } else {
        "t,P_g,P_e\n"
    });
    for (t, pops) in rows {
        out.push_str(&csv_value(*t));
        for p in pops {
            out.push(',');
            out.push_str(&csv_value(*p));
        }
        out.push('\n');
    }
    write_atomic(&dir.join("timeseries.csv"), out.as_bytes())
}

/// Stroboscopic fidelity table: `n, F(nT)`.
pub fn write_fidelity(dir: &Path, series: &[f64]) -> Result<(), String> {
    let mut out = String::from("n,F\n");
    for (k, f) in series.iter().enumerate() {
        out.push_str(&format!("{},{}\n", k + 1, csv_value(*f)));
    }
    write_atomic(&dir.join("fidelity.csv"), out.as_bytes())
}

/// Row-major grid table: `axis1, axis2, metric`.
pub fn write_grid_csv(dir: &Path, grid: &SweepGrid) -> Result<(), String> {
    let mut out = format!(
        "{},{},{}\n",
        grid.axis1_name, grid.axis2_name, grid.metric_name
    );
    for (i, a) in grid.axis1.iter().enumerate() {
        for (j, b) in grid.axis2.iter().enumerate() {
            out.push_str(&csv_value(*a));
            out.push(',');
            out.push_str(&csv_value(*b));
            out.push(',');
            out.push_str(&csv_value(grid.at(i, j)));
            out.push('\n');
        }
    }
    write_atomic(&dir.join("grid.csv"), out.as_bytes())
}

/// Gray level for a metric value: log-scaled over [1e-8, 1], darker for
/// higher values; failed (NaN) cells map to black.
pub fn gray_level(metric: f64) -> u8 {
    if metric.is_nan() {
        return 0;
    }
    let clamped = metric.clamp(1e-8, 1.0);
    let scaled = -clamped.log10() / 8.0;
    (scaled * 255.0).round() as u8
}

/// Plain (P2) 8-bit portable graymap of the grid, one grid row per line.
pub fn write_grid_pgm(dir: &Path, grid: &SweepGrid) -> Result<(), String> {
    let width = grid.axis2.len();
    let height = grid.axis1.len();
    let mut out = format!(
        "P2\n# {} over {} x {}\n{} {}\n255\n",
        grid.metric_name, grid.axis1_name, grid.axis2_name, width, height
    );
    for i in 0..height {
        let row: Vec<String> = (0..width)
            .map(|j| gray_level(grid.at(i, j)).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    write_atomic(&dir.join("grid.pgm"), out.as_bytes())
}

/// One-sided spectrum table: `nu, magnitude`.
pub fn write_spectrum(dir: &Path, spec: &Spectrum) -> Result<(), String> {
    let mut out = String::from("nu,magnitude\n");
    for (k, m) in spec.magnitudes.iter().enumerate() {
        out.push_str(&csv_value(spec.frequency(k)));
        out.push(',');
        out.push_str(&csv_value(*m));
        out.push('\n');
    }
    write_atomic(&dir.join("spectrum.csv"), out.as_bytes())
}

/// Located compensation point: `vt2, residual_infidelity`.
pub fn write_magic(dir: &Path, x: f64, value: f64) -> Result<(), String> {
    let out = format!(
        "vt2,residual_infidelity\n{},{}\n",
        csv_value(x),
        csv_value(value)
    );
    write_atomic(&dir.join("magic.csv"), out.as_bytes())
}
