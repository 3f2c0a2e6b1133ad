//! Two identical driven qubits in the symmetric subspace.
//!
//! The symmetric basis is `|gg>`, `|s> = (|ge> + |eg>)/sqrt(2)`, `|ee>`.
//! The drive couples neighbors with strength `omega/sqrt(2)`; the diagonal
//! carries `(0, delta, 2 delta)` during pulses, and the doubly excited state
//! carries the interaction energy `v`. The singlet state decouples, so
//! starting from `|gg>` the three-level description is exact; a four-level
//! product-space propagation is provided as an independent cross-check.

use crate::error::Result;
use crate::schedule::{Schedule, Segment};
use crate::state::{basis_state, tensor_product, Operator, StateVec};
use crate::twolevel::{Gating, TwoLevelConfig};
use num_complex::Complex;
use std::f64::consts::SQRT_2;

/// Index of `|gg>`.
pub const GG: usize = 0;
/// Index of the symmetric one-excitation state.
pub const S: usize = 1;
/// Index of `|ee>`.
pub const EE: usize = 2;

/// Parameters of the symmetric two-qubit model.
///
/// The fields mirror [`TwoLevelConfig`]; `delta` is the per-qubit detuning
/// applied during pulses and `v` the interaction energy of `|ee>`.
pub type DickeConfig = TwoLevelConfig;

/// Drive and interaction Hamiltonians in the symmetric basis.
///
/// Returns `(h0, hv)` where `h0` has the drive couplings and the detuning
/// diagonal `(0, delta, 2 delta)`, and `hv` is the interaction term
/// `v |ee><ee|`.
pub fn dicke_hamiltonians(omega: f64, delta: f64, v: f64) -> (Operator<f64>, Operator<f64>) {
    let mut h0 = Operator::zeros(3);
    let g = Complex::new(omega / SQRT_2, 0.0);
    h0.set(GG, S, g);
    h0.set(S, GG, g);
    h0.set(S, EE, g);
    h0.set(EE, S, g);
    h0.set(S, S, Complex::new(delta, 0.0));
    h0.set(EE, EE, Complex::new(2.0 * delta, 0.0));

    let mut hv = Operator::zeros(3);
    hv.set(EE, EE, Complex::new(v, 0.0));
    (h0, hv)
}

/// Builds the period schedule in the symmetric basis: pulse, wait, pulse, wait.
///
/// Pulses carry the drive and detuning (plus the interaction when always on);
/// waits carry the interaction energy only.
pub fn build_dicke_schedule(cfg: &DickeConfig) -> Result<Schedule<f64>> {
    cfg.validate()?;
    let (h0, hv) = dicke_hamiltonians(cfg.omega(), cfg.delta, cfg.v);
    let mut hp = h0;
    if cfg.gating == Gating::AlwaysOn {
        let x = hp.get(EE, EE) + hv.get(EE, EE);
        hp.set(EE, EE, x);
    }
    let pulse = Segment::constant(cfg.t1, &hp)?;
    let wait = Segment::constant(cfg.t2, &hv)?;
    Schedule::new(3, vec![pulse.clone(), wait.clone(), pulse, wait])
}

/// Probability that a single qubit drawn from the pair is in its ground
/// state: `|c_gg|^2 + |c_s|^2 / 2`.
pub fn fidelity2(psi: &[Complex<f64>]) -> f64 {
    psi[GG].norm_sqr() + 0.5 * psi[S].norm_sqr()
}

/// Single-qubit ground fidelity after each of the first `n_periods` periods,
/// starting from `|gg>`.
pub fn fidelity_series_dicke(cfg: &DickeConfig) -> Result<Vec<f64>> {
    let schedule = build_dicke_schedule(cfg)?;
    let mut psi = basis_state::<f64>(3, GG);
    let mut out = Vec::with_capacity(cfg.n_periods);
    for _ in 0..cfg.n_periods {
        schedule.evolve_period(&mut psi)?;
        out.push(fidelity2(&psi));
    }
    Ok(out)
}

/// Single-qubit Hamiltonian matching the symmetric-basis sign convention:
/// diagonal `(0, delta)` with drive coupling `omega/2`.
fn single_qubit_hamiltonian(omega: f64, delta: f64) -> Operator<f64> {
    let mut h = Operator::zeros(2);
    let g = Complex::new(omega / 2.0, 0.0);
    h.set(0, 1, g);
    h.set(1, 0, g);
    h.set(1, 1, Complex::new(delta, 0.0));
    h
}

/// Builds the period schedule in the full two-qubit product space
/// (`|gg>, |ge>, |eg>, |ee>`), as an independent cross-check of the
/// symmetric-basis reduction.
pub fn build_two_qubit_schedule(cfg: &DickeConfig) -> Result<Schedule<f64>> {
    cfg.validate()?;
    let h1 = single_qubit_hamiltonian(cfg.omega(), cfg.delta);
    let id = Operator::identity(2);
    let mut h0 = Operator::zeros(4);
    let a = tensor_product(&h1, &id);
    let b = tensor_product(&id, &h1);
    for i in 0..16 {
        h0.as_mut_slice()[i] = a.as_slice()[i] + b.as_slice()[i];
    }
    let mut hv = Operator::zeros(4);
    hv.set(3, 3, Complex::new(cfg.v, 0.0));

    let mut hp = h0;
    if cfg.gating == Gating::AlwaysOn {
        let x = hp.get(3, 3) + hv.get(3, 3);
        hp.set(3, 3, x);
    }
    let pulse = Segment::constant(cfg.t1, &hp)?;
    let wait = Segment::constant(cfg.t2, &hv)?;
    Schedule::new(4, vec![pulse.clone(), wait.clone(), pulse, wait])
}

/// Single-qubit ground fidelity for a full product-space state.
pub fn fidelity2_product(psi: &[Complex<f64>]) -> f64 {
    let cs = (psi[1] + psi[2]) / Complex::new(SQRT_2, 0.0);
    psi[0].norm_sqr() + 0.5 * cs.norm_sqr()
}

/// Singlet amplitude `(c_ge - c_eg)/sqrt(2)` of a product-space state.
pub fn singlet_amplitude(psi: &[Complex<f64>]) -> Complex<f64> {
    (psi[1] - psi[2]) / Complex::new(SQRT_2, 0.0)
}

/// Product-space counterpart of [`fidelity_series_dicke`], starting from
/// `|gg>` and recording the single-qubit ground fidelity each period.
pub fn two_qubit_fidelity_series(cfg: &DickeConfig) -> Result<Vec<f64>> {
    let schedule = build_two_qubit_schedule(cfg)?;
    let mut psi = basis_state::<f64>(4, 0);
    let mut out = Vec::with_capacity(cfg.n_periods);
    for _ in 0..cfg.n_periods {
        schedule.evolve_period(&mut psi)?;
        out.push(fidelity2_product(&psi));
    }
    Ok(out)
}

/// Product-space stroboscopic states after each period (for invariant tests).
pub fn two_qubit_states(cfg: &DickeConfig) -> Result<Vec<StateVec<f64>>> {
    let schedule = build_two_qubit_schedule(cfg)?;
    let mut psi = basis_state::<f64>(4, 0);
    let mut out = Vec::with_capacity(cfg.n_periods);
    for _ in 0..cfg.n_periods {
        schedule.evolve_period(&mut psi)?;
        out.push(psi.clone());
    }
    Ok(out)
}

/// Closed-form occupation estimates for one period, as a pair
/// `(|c_gg|^2, |c_s|^2)` in terms of the pulse area `omega * t1` and wait
/// phase `v * t2`.
///
/// Reference-only: these expressions are known to leave `[0, 1]` in parts of
/// the parameter plane (for example they give 0 at an exact pi pulse with no
/// interaction, and 4 at wait phase pi), so they are never used as an oracle.
/// Numerical propagation is authoritative.
pub fn closed_form_occupations(omega_t1: f64, v_t2: f64) -> (f64, f64) {
    let a = omega_t1;
    let phi = v_t2;
    let ca = a.cos();
    let c2a = (2.0 * a).cos();
    let sa = a.sin();
    let cphi = phi.cos();
    let sphi = phi.sin();

    let lead = (1.0 - c2a) - 0.5 * (1.0 - ca).powi(2) * (1.0 - cphi);
    let cgg2 = 0.25 * lead * lead + (1.0 - ca).powi(4) * sphi * sphi / 16.0;

    let cs2 = 0.25 * sa * sa * (ca * ca * (5.0 + 3.0 * cphi) + (2.0 * ca + 1.0) * (1.0 - cphi));
    (cgg2, cs2)
}
