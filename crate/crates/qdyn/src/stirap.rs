//! Double stimulated Raman adiabatic passage through an intermediate level.
//!
//! Each period holds two Gaussian pulse pairs: a forward transfer from the
//! ground to the final level followed by a reversed transfer back, with free
//! waits in between. Pulse pairs are truncated to a window of `window`
//! Gaussian widths on each side of their crossing; outside the window only
//! the static detunings act. In the two-system variant both atoms share the
//! drive and the doubly excited state carries an interaction energy that can
//! be gated to the span between the two transfers.

use crate::error::{QdynError, Result};
use crate::schedule::{Schedule, Segment};
use crate::state::{basis_state, partial_trace_second, Operator, StateVec};
use crate::twolevel::{Gating, MAX_PERIODS};
use num_complex::Complex;
use std::sync::Arc;

/// Ground level index.
pub const LG: usize = 0;
/// Intermediate level index.
pub const LI: usize = 1;
/// Final level index.
pub const LE: usize = 2;

/// Parameters of the double-transfer model.
#[derive(Clone, Debug)]
pub struct StirapConfig {
    /// Peak Rabi frequency shared by both pulses.
    pub omega0: f64,
    /// Gaussian pulse width.
    pub t_g: f64,
    /// Separation between the two pulse centers of a pair.
    pub t1: f64,
    /// Separation between the forward and reversed pair crossings; the
    /// period is `2 * t2`.
    pub t2: f64,
    /// One-photon detuning of the intermediate level.
    pub delta: f64,
    /// Two-photon detuning of the final level.
    pub delta2: f64,
    /// Interaction energy of the doubly excited state (two-system only).
    pub v: f64,
    /// Interaction gating mode (two-system only).
    pub gating: Gating,
    /// Simulate two atoms sharing the drive.
    pub two_system: bool,
    /// Number of periods to simulate.
    pub n_periods: usize,
    /// Integrator step bound for the pulse windows.
    pub dt: f64,
    /// Pulse half-window in units of `t_g`.
    pub window: f64,
}

impl Default for StirapConfig {
    fn default() -> Self {
        Self {
            omega0: 12.0,
            t_g: 1.0,
            t1: 1.2,
            t2: 10.0,
            delta: 1.4,
            delta2: 0.0,
            v: 0.0,
            gating: Gating::AlwaysOn,
            two_system: false,
            n_periods: 5,
            dt: 1.0 / 500.0,
            window: 4.0,
        }
    }
}

impl StirapConfig {
    /// Pulse half-window, `window * t_g`.
    pub fn half_window(&self) -> f64 {
        self.window * self.t_g
    }

    /// Period duration, `2 * t2`.
    pub fn period(&self) -> f64 {
        2.0 * self.t2
    }

    /// System dimension: 3 for one atom, 9 for two.
    pub fn dim(&self) -> usize {
        if self.two_system {
            9
        } else {
            3
        }
    }

    /// Interaction phase accumulated between the two transfers, `v * t2`.
    pub fn v_t2(&self) -> f64 {
        self.v * self.t2
    }

    /// Sets `v` so that `v * t2` equals `phase`.
    pub fn set_v_t2(&mut self, phase: f64) {
        self.v = phase / self.t2;
    }

    /// Validates parameter ranges.
    pub fn validate(&self) -> Result<()> {
        if !(self.t_g > 0.0) || !(self.window > 0.0) {
            return Err(QdynError::InvalidConfig {
                message: "pulse width and window must be positive".into(),
            });
        }
        if !(self.t2 > 2.0 * self.half_window()) {
            return Err(QdynError::InvalidConfig {
                message: "t2 must exceed the full pulse window (2 * window * t_g)".into(),
            });
        }
        if !(self.dt > 0.0) {
            return Err(QdynError::InvalidConfig {
                message: "integrator step must be positive".into(),
            });
        }
        if self.n_periods == 0 || self.n_periods > MAX_PERIODS {
            return Err(QdynError::InvalidConfig {
                message: format!("n_periods must be in 1..={MAX_PERIODS}"),
            });
        }
        for (name, x) in [
            ("omega0", self.omega0),
            ("t1", self.t1),
            ("delta", self.delta),
            ("delta2", self.delta2),
            ("v", self.v),
        ] {
            if !x.is_finite() {
                return Err(QdynError::InvalidConfig {
                    message: format!("{name} must be finite"),
                });
            }
        }
        Ok(())
    }
}

/// Pump and Stokes amplitudes at time `t` relative to the pair crossing.
///
/// The forward pair applies the Stokes pulse first (peak at `-t1/2`) and the
/// pump second (peak at `+t1/2`); the reversed pair swaps the roles.
pub fn pump_stokes(cfg: &StirapConfig, t: f64, reversed: bool) -> (f64, f64) {
    let g = |center: f64| {
        let x = (t - center) / cfg.t_g;
        cfg.omega0 * (-x * x).exp()
    };
    let late = g(cfg.t1 / 2.0);
    let early = g(-cfg.t1 / 2.0);
    if reversed {
        (early, late)
    } else {
        (late, early)
    }
}

/// Three-level Hamiltonian for given pump and Stokes amplitudes: diagonal
/// `(0, -delta, -delta2)`, pump coupling on the ground leg, Stokes coupling
/// on the final leg.
pub fn stirap_hamiltonian(cfg: &StirapConfig, omega_p: f64, omega_s: f64) -> Operator<f64> {
    let mut h = Operator::zeros(3);
    h.set(LI, LI, Complex::new(-cfg.delta, 0.0));
    h.set(LE, LE, Complex::new(-cfg.delta2, 0.0));
    let p = Complex::new(omega_p / 2.0, 0.0);
    let s = Complex::new(omega_s / 2.0, 0.0);
    h.set(LG, LI, p);
    h.set(LI, LG, p);
    h.set(LI, LE, s);
    h.set(LE, LI, s);
    h
}

/// Instantaneous dark state `cos(theta)|g> - sin(theta)|e>` with
/// `theta = atan2(omega_p, omega_s)`.
///
/// Errors if both amplitudes are too small to define the mixing angle.
pub fn dark_state(omega_p: f64, omega_s: f64) -> Result<StateVec<f64>> {
    if omega_p.abs() < 1e-300 && omega_s.abs() < 1e-300 {
        return Err(QdynError::UndefinedAngle);
    }
    let theta = omega_p.atan2(omega_s);
    let zero = Complex::new(0.0, 0.0);
    Ok(vec![
        Complex::new(theta.cos(), 0.0),
        zero,
        Complex::new(-theta.sin(), 0.0),
    ])
}

/// Writes the single-atom Hamiltonian entries as a real 3x3 array.
#[inline]
fn h3_entries(cfg: &StirapConfig, omega_p: f64, omega_s: f64) -> ([f64; 3], f64, f64) {
    ([0.0, -cfg.delta, -cfg.delta2], omega_p / 2.0, omega_s / 2.0)
}

/// Fills the one-atom or two-atom Hamiltonian for a pulse segment.
fn fill_pulse(
    cfg: &StirapConfig,
    t_rel: f64,
    reversed: bool,
    v_active: bool,
    h: &mut Operator<f64>,
) {
    let (op_, os_) = pump_stokes(cfg, t_rel, reversed);
    let (diag, p, s) = h3_entries(cfg, op_, os_);
    h.clear();
    if !cfg.two_system {
        h.set(LI, LI, Complex::new(diag[LI], 0.0));
        h.set(LE, LE, Complex::new(diag[LE], 0.0));
        let pc = Complex::new(p, 0.0);
        let sc = Complex::new(s, 0.0);
        h.set(LG, LI, pc);
        h.set(LI, LG, pc);
        h.set(LI, LE, sc);
        h.set(LE, LI, sc);
        return;
    }
    for a in 0..3 {
        for b in 0..3 {
            let i = a * 3 + b;
            let mut d = diag[a] + diag[b];
            if v_active && a == LE && b == LE {
                d += cfg.v;
            }
            h.set(i, i, Complex::new(d, 0.0));
        }
    }
    for (a, c, x) in [(LG, LI, p), (LI, LG, p), (LI, LE, s), (LE, LI, s)] {
        let xc = Complex::new(x, 0.0);
        for b in 0..3 {
            let i = a * 3 + b;
            let j = c * 3 + b;
            let cur = h.get(i, j);
            h.set(i, j, cur + xc);
            let i2 = b * 3 + a;
            let j2 = b * 3 + c;
            let cur2 = h.get(i2, j2);
            h.set(i2, j2, cur2 + xc);
        }
    }
}

/// Wait Hamiltonian: static detunings (and the interaction when active).
fn wait_hamiltonian(cfg: &StirapConfig, v_active: bool) -> Operator<f64> {
    let diag = [0.0, -cfg.delta, -cfg.delta2];
    if !cfg.two_system {
        let mut h = Operator::zeros(3);
        for (k, d) in diag.iter().enumerate() {
            h.set(k, k, Complex::new(*d, 0.0));
        }
        return h;
    }
    let mut h = Operator::zeros(9);
    for a in 0..3 {
        for b in 0..3 {
            let i = a * 3 + b;
            let mut d = diag[a] + diag[b];
            if v_active && a == LE && b == LE {
                d += cfg.v;
            }
            h.set(i, i, Complex::new(d, 0.0));
        }
    }
    h
}

/// Builds a pulse segment spanning `[offset, offset + duration)` in time
/// relative to the pair crossing.
fn pulse_segment(
    cfg: &StirapConfig,
    offset: f64,
    duration: f64,
    reversed: bool,
    v_active: bool,
) -> Segment<f64> {
    let dt = cfg.dt;
    let cfg = cfg.clone();
    let fill = Arc::new(move |tl: f64, h: &mut Operator<f64>| {
        fill_pulse(&cfg, tl + offset, reversed, v_active, h);
    });
    Segment::time_dependent(duration, fill, dt)
}

/// Builds the period schedule.
///
/// Always-on interaction gives four segments per period: forward pulse pair,
/// wait, reversed pulse pair, wait. Gated interaction confines the
/// interaction to the span between the two crossings, which splits each
/// pulse window at its crossing into an outer half without interaction and
/// an inner half with it.
pub fn build_stirap_schedule(cfg: &StirapConfig) -> Result<Schedule<f64>> {
    cfg.validate()?;
    let w = cfg.half_window();
    let wait_len = cfg.t2 - 2.0 * w;
    let dim = cfg.dim();
    let gated = cfg.two_system && cfg.gating == Gating::GatedT2Only;

    let segments: Vec<Segment<f64>> = if !gated {
        let v_on = cfg.two_system;
        vec![
            pulse_segment(cfg, -w, 2.0 * w, false, v_on),
            Segment::constant(wait_len, &wait_hamiltonian(cfg, v_on))?,
            pulse_segment(cfg, -w, 2.0 * w, true, v_on),
            Segment::constant(wait_len, &wait_hamiltonian(cfg, v_on))?,
        ]
    } else {
        vec![
            pulse_segment(cfg, -w, w, false, false),
            pulse_segment(cfg, 0.0, w, false, true),
            Segment::constant(wait_len, &wait_hamiltonian(cfg, true))?,
            pulse_segment(cfg, -w, w, true, true),
            pulse_segment(cfg, 0.0, w, true, false),
            Segment::constant(wait_len, &wait_hamiltonian(cfg, false))?,
        ]
    };
    Schedule::new(dim, segments)
}

/// Initial state: the ground level (both atoms in it for two systems).
pub fn initial_state(cfg: &StirapConfig) -> StateVec<f64> {
    basis_state(cfg.dim(), 0)
}

/// Level populations `(p_g, p_i, p_e)`; for two systems these are
/// single-atom populations from the reduced density matrix.
pub fn populations(cfg: &StirapConfig, psi: &[Complex<f64>]) -> Result<(f64, f64, f64)> {
    if cfg.two_system {
        let rho = partial_trace_second(psi, 3, 3)?;
        Ok((rho.get(LG, LG).re, rho.get(LI, LI).re, rho.get(LE, LE).re))
    } else {
        Ok((psi[LG].norm_sqr(), psi[LI].norm_sqr(), psi[LE].norm_sqr()))
    }
}

/// Result of a single-atom double-transfer period.
#[derive(Clone, Copy, Debug)]
pub struct SingleTransferResult {
    /// Final-level population right after the forward transfer.
    pub transfer_fidelity: f64,
    /// Ground-level population at the end of the period.
    pub end_fidelity: f64,
}

/// Runs one period of the single-atom model and reports the forward-transfer
/// quality and the end-of-period ground fidelity.
pub fn double_stirap_single(cfg: &StirapConfig) -> Result<SingleTransferResult> {
    let mut cfg = cfg.clone();
    cfg.two_system = false;
    let schedule = build_stirap_schedule(&cfg)?;
    let mut psi = initial_state(&cfg);
    schedule.evolve_segment(0, &mut psi)?;
    let transfer_fidelity = psi[LE].norm_sqr();
    for k in 1..schedule.segments().len() {
        schedule.evolve_segment(k, &mut psi)?;
    }
    Ok(SingleTransferResult {
        transfer_fidelity,
        end_fidelity: psi[LG].norm_sqr(),
    })
}

/// Single-atom ground fidelity after each period, with both atoms simulated
/// and the fidelity read from the reduced density matrix.
pub fn double_stirap_two_system(cfg: &StirapConfig) -> Result<Vec<f64>> {
    let mut cfg = cfg.clone();
    cfg.two_system = true;
    let schedule = build_stirap_schedule(&cfg)?;
    let mut psi = initial_state(&cfg);
    let mut out = Vec::with_capacity(cfg.n_periods);
    for _ in 0..cfg.n_periods {
        schedule.evolve_period(&mut psi)?;
        let (p_g, _, _) = populations(&cfg, &psi)?;
        out.push(p_g);
    }
    Ok(out)
}

/// Ground fidelity after each period for the configured system size.
pub fn fidelity_series_stirap(cfg: &StirapConfig) -> Result<Vec<f64>> {
    let schedule = build_stirap_schedule(cfg)?;
    let mut psi = initial_state(cfg);
    let mut out = Vec::with_capacity(cfg.n_periods);
    for _ in 0..cfg.n_periods {
        schedule.evolve_period(&mut psi)?;
        let (p_g, _, _) = populations(cfg, &psi)?;
        out.push(p_g);
    }
    Ok(out)
}
