//! Flat key-value configuration files with one-level section headers.
//!
//! A file consists of `[section]` headers followed by `key = value` lines;
//! blank lines and lines starting with `#` or `;` are ignored. Exactly one
//! model section (`[twolevel]`, `[dicke]`, or `[stirap]`) selects the system;
//! the `sweep`, `fourier`, and `magic` sections configure the corresponding
//! subcommands. Unknown sections and unknown keys are errors that name the
//! offender, never warnings.

use std::collections::BTreeMap;

use qdyn::model::ModelConfig;
use qdyn::stirap::StirapConfig;
use qdyn::twolevel::{Gating, TwoLevelConfig};

/// One parsed section: ordered keys with their values and source lines.
#[derive(Debug, Default)]
pub struct Section {
    entries: BTreeMap<String, (String, usize)>,
    taken: std::cell::RefCell<Vec<String>>,
}

impl Section {
    fn insert(&mut self, key: String, value: String, line: usize) -> Result<(), String> {
        if let Some((_, first)) = self.entries.get(&key) {
            return Err(format!(
                "duplicate key `{key}` on line {line} (first set on line {first})"
            ));
        }
        self.entries.insert(key, (value, line));
        Ok(())
    }

    /// Returns the raw value for `key`, marking it as consumed.
    pub fn take(&self, key: &str) -> Option<&str> {
        if self.entries.contains_key(key) {
            self.taken.borrow_mut().push(key.to_string());
        }
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    /// `f64` value for `key`, or `default` when absent.
    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, String> {
        match self.take(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse::<f64>()
                .map_err(|_| format!("key `{key}`: `{raw}` is not a number")),
        }
    }

    /// Required `f64` value for `key`.
    pub fn f64_required(&self, key: &str, section: &str) -> Result<f64, String> {
        match self.take(key) {
            None => Err(format!(
                "section [{section}] is missing required key `{key}`"
            )),
            Some(raw) => raw
                .parse::<f64>()
                .map_err(|_| format!("key `{key}`: `{raw}` is not a number")),
        }
    }

    /// `usize` value for `key`, or `default` when absent.
    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, String> {
        match self.take(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse::<usize>()
                .map_err(|_| format!("key `{key}`: `{raw}` is not a non-negative integer")),
        }
    }

    /// Boolean value (`true`/`false`) for `key`, or `default` when absent.
    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool, String> {
        match self.take(key) {
            None => Ok(default),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(raw) => Err(format!("key `{key}`: `{raw}` is not `true` or `false`")),
        }
    }

    /// Errors on any key that was never consumed by the schema.
    pub fn reject_unknown(&self, section: &str) -> Result<(), String> {
        let taken = self.taken.borrow();
        for (key, (_, line)) in &self.entries {
            if !taken.iter().any(|t| t == key) {
                return Err(format!(
                    "unknown key `{key}` in section [{section}] (line {line})"
                ));
            }
        }
        Ok(())
    }
}

/// A parsed configuration file: named sections in file order.
#[derive(Debug, Default)]
pub struct Config {
    sections: Vec<(String, Section)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = Config::default();
        let mut current: Option<usize> = None;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or(format!("line {line_no}: unterminated section header"))?
                    .trim()
                    .to_string();
                if name.is_empty() {
                    return Err(format!("line {line_no}: empty section name"));
                }
                if cfg.sections.iter().any(|(n, _)| *n == name) {
                    return Err(format!("line {line_no}: duplicate section [{name}]"));
                }
                cfg.sections.push((name, Section::default()));
                current = Some(cfg.sections.len() - 1);
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(format!("line {line_no}: expected `key = value`"))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(format!("line {line_no}: empty key"));
            }
            match current {
                None => {
                    return Err(format!(
                        "line {line_no}: key `{key}` appears before any [section] header"
                    ))
                }
                Some(i) => cfg.sections[i].1.insert(key, value, line_no)?,
            }
        }
        if cfg.sections.is_empty() {
            return Err("configuration has no sections; expected one model section \
                 ([twolevel], [dicke], or [stirap])"
                .to_string());
        }
        Ok(cfg)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    /// The single model section in the file, as `(kind, section)`.
    pub fn model_section(&self) -> Result<(&str, &Section), String> {
        let models: Vec<&(String, Section)> = self
            .sections
            .iter()
            .filter(|(n, _)| matches!(n.as_str(), "twolevel" | "dicke" | "stirap"))
            .collect();
        match models.len() {
            0 => Err(
                "no model section found; expected one of [twolevel], [dicke], [stirap]".to_string(),
            ),
            1 => Ok((models[0].0.as_str(), &models[0].1)),
            _ => Err(format!(
                "multiple model sections found ([{}] and [{}]); expected exactly one",
                models[0].0, models[1].0
            )),
        }
    }

    /// Errors on sections the given subcommand does not read.
    pub fn reject_unused_sections(&self, allowed: &[&str]) -> Result<(), String> {
        for (name, _) in &self.sections {
            let is_model = matches!(name.as_str(), "twolevel" | "dicke" | "stirap");
            if !is_model && !allowed.contains(&name.as_str()) {
                return Err(format!("unknown or unused section [{name}]"));
            }
        }
        Ok(())
    }
}

/// Model settings extracted from a configuration: the physical configuration
/// plus the time-series sampling density used by the simulate command.
pub struct ModelSettings {
    pub model: ModelConfig,
    pub samples_per_period: usize,
}

/// Builds the model from the file's single model section.
///
/// All physical knobs are the dimensionless products `eps`, `vt2`,
/// `delta_t1` (driven models) and `omega_tg`, `delta_tg`, `delta2_tg`, `vt2`
/// (transfer model), together with the explicit durations `t1`, `t2`, `t_g`;
/// raw frequencies are derived from those.
pub fn build_model(cfg: &Config) -> Result<ModelSettings, String> {
    let (kind, s) = cfg.model_section()?;
    let samples_per_period = s.usize_or("samples_per_period", 64)?;
    let model = match kind {
        "twolevel" | "dicke" => {
            let t1 = s.f64_or("t1", 1.0)?;
            let t2 = s.f64_or("t2", 10.0)?;
            let mut m = TwoLevelConfig::calibrated(t1, t2);
            m.eps_rot = s.f64_or("eps", 0.0)?;
            m.set_v_t2(s.f64_or("vt2", 0.0)?);
            m.delta = s.f64_or("delta_t1", 0.0)? / t1;
            m.gating = parse_gating(s, Gating::GatedT2Only)?;
            m.n_periods = s.usize_or("n_periods", 50)?;
            if kind == "twolevel" {
                ModelConfig::TwoLevel(m)
            } else {
                ModelConfig::Dicke(m)
            }
        }
        "stirap" => {
            let mut m = StirapConfig::default();
            m.t_g = s.f64_or("t_g", 1.0)?;
            m.t1 = s.f64_or("t1", 1.2)?;
            m.t2 = s.f64_or("t2", 10.0)?;
            m.omega0 = s.f64_or("omega_tg", 12.0)? / m.t_g;
            m.delta = s.f64_or("delta_tg", 1.4)? / m.t_g;
            m.delta2 = s.f64_or("delta2_tg", 0.0)? / m.t_g;
            m.set_v_t2(s.f64_or("vt2", 0.0)?);
            m.two_system = s.bool_or("two_system", false)?;
            m.gating = parse_gating(s, Gating::AlwaysOn)?;
            m.n_periods = s.usize_or("n_periods", 5)?;
            m.window = s.f64_or("window", 4.0)?;
            let dt_steps = s.usize_or("dt_steps", 500)?;
            if dt_steps == 0 {
                return Err("key `dt_steps`: must be at least 1".to_string());
            }
            m.dt = m.t_g / dt_steps as f64;
            ModelConfig::Stirap(m)
        }
        other => return Err(format!("unknown model kind `{other}`")),
    };
    s.reject_unknown(kind)?;
    Ok(ModelSettings {
        model,
        samples_per_period,
    })
}

fn parse_gating(s: &Section, default: Gating) -> Result<Gating, String> {
    match s.take("gating") {
        None => Ok(default),
        Some("gated") => Ok(Gating::GatedT2Only),
        Some("always_on") => Ok(Gating::AlwaysOn),
        Some(raw) => Err(format!(
            "key `gating`: `{raw}` is not `gated` or `always_on`"
        )),
    }
}

/// One scan axis: the parameter name and its sampled values.
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

fn parse_axis(s: &Section, section: &str, prefix: &str) -> Result<Axis, String> {
    let name = s
        .take(prefix)
        .ok_or(format!(
            "section [{section}] is missing required key `{prefix}`"
        ))?
        .to_string();
    let lo = s.f64_required(&format!("{prefix}_min"), section)?;
    let hi = s.f64_required(&format!("{prefix}_max"), section)?;
    let steps = s.usize_or(&format!("{prefix}_steps"), 0)?;
    if steps == 0 {
        return Err(format!(
            "section [{section}] is missing required key `{prefix}_steps` (or it is 0)"
        ));
    }
    Ok(Axis {
        name,
        values: qdyn::sweep::linspace(lo, hi, steps),
    })
}

/// Sweep settings: two axes plus the checkpoint period count.
pub struct SweepSettings {
    pub axis1: Axis,
    pub axis2: Axis,
    pub n_checkpoint: usize,
}

pub fn build_sweep(cfg: &Config, default_n: usize) -> Result<SweepSettings, String> {
    let s = cfg
        .section("sweep")
        .ok_or("sweep runs need a [sweep] section".to_string())?;
    let axis1 = parse_axis(s, "sweep", "axis1")?;
    let axis2 = parse_axis(s, "sweep", "axis2")?;
    let n_checkpoint = s.usize_or("n_checkpoint", default_n)?;
    s.reject_unknown("sweep")?;
    Ok(SweepSettings {
        axis1,
        axis2,
        n_checkpoint,
    })
}

/// Spectral-scan settings: sampling density and optional grid axes.
pub struct FourierSettings {
    pub samples_per_period: usize,
    pub n_periods: usize,
    pub axes: Option<(Axis, Axis)>,
}

pub fn build_fourier(cfg: &Config) -> Result<FourierSettings, String> {
    let s = cfg
        .section("fourier")
        .ok_or("fourier runs need a [fourier] section".to_string())?;
    let samples_per_period = s.usize_or("samples_per_period", 64)?;
    let n_periods = s.usize_or("n_periods", 64)?;
    let grid_mode = s.entries.contains_key("axis1");
    let axes = if grid_mode {
        Some((
            parse_axis(s, "fourier", "axis1")?,
            parse_axis(s, "fourier", "axis2")?,
        ))
    } else {
        None
    };
    s.reject_unknown("fourier")?;
    Ok(FourierSettings {
        samples_per_period,
        n_periods,
        axes,
    })
}

/// Compensation-search settings: bracket, tolerance, checkpoint.
pub struct MagicSettings {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub n_checkpoint: usize,
}

pub fn build_magic(cfg: &Config, default_n: usize) -> Result<MagicSettings, String> {
    let s = cfg
        .section("magic")
        .ok_or("magic runs need a [magic] section".to_string())?;
    let lo = s.f64_required("lo", "magic")?;
    let hi = s.f64_required("hi", "magic")?;
    let tol = s.f64_or("tol", 1e-6)?;
    let n_checkpoint = s.usize_or("n_checkpoint", default_n)?;
    s.reject_unknown("magic")?;
    Ok(MagicSettings {
        lo,
        hi,
        tol,
        n_checkpoint,
    })
}
