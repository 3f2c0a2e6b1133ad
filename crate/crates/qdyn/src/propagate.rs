//! State propagation under constant and time-dependent Hamiltonians.

use crate::eig;
use crate::error::{QdynError, Result};
use crate::real::Real;
use crate::state::{state_norm, Operator, StateVec};
use num_complex::Complex;

/// Propagates `psi` under a constant Hamiltonian for a duration `dt`,
/// returning `exp(-i H dt) psi`.
///
/// The Hamiltonian must be Hermitian; the evolution is computed through an
/// exact eigendecomposition, so the norm is preserved to rounding and no
/// renormalization is done.
pub fn propagate_constant<T: Real>(
    h: &Operator<T>,
    dt: T,
    psi: &[Complex<T>],
) -> Result<StateVec<T>> {
    eig::evolve_constant(h, dt, psi)
}

/// Propagates `psi` under a time-dependent Hamiltonian `h(t)` from `t0` to
/// `t1` with a classical fixed-step fourth-order Runge-Kutta integrator.
///
/// `fill` writes `h(t)` into the provided operator. The step count is
/// `ceil((t1 - t0) / dt)` so the requested step is an upper bound. The state
/// is never renormalized; the relative norm drift is measured at the end and
/// a drift above `1e-6` is reported as an integration failure carrying the
/// measured value.
pub fn propagate_timedep<T: Real>(
    fill: &(dyn Fn(T, &mut Operator<T>) + Send + Sync),
    dim: usize,
    t0: T,
    t1: T,
    dt: T,
    psi: &[Complex<T>],
) -> Result<StateVec<T>> {
    if psi.len() != dim {
        return Err(QdynError::DimensionMismatch {
            context: format!("state length {} for system dimension {}", psi.len(), dim),
        });
    }
    let span = t1 - t0;
    if span <= T::zero() {
        return Ok(psi.to_vec());
    }
    if dt <= T::zero() {
        return Err(QdynError::InvalidConfig {
            message: "integrator step must be positive".into(),
        });
    }

    let steps = (span / dt).ceil().to_f64().unwrap_or(1.0).max(1.0) as usize;
    let h = span / T::of(steps as f64);
    let half = h / T::of(2.0);

    let norm_in = state_norm(psi);
    let mut state = psi.to_vec();
    let mut op = Operator::<T>::zeros(dim);
    let zero = Complex::new(T::zero(), T::zero());
    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let mut tmp = vec![zero; dim];

    for n in 0..steps {
        let t = t0 + h * T::of(n as f64);

        fill(t, &mut op);
        deriv(&op, &state, &mut k1);

        // k2 and k3 share the midpoint Hamiltonian.
        fill(t + half, &mut op);
        axpy(&state, half, &k1, &mut tmp);
        deriv(&op, &tmp, &mut k2);
        axpy(&state, half, &k2, &mut tmp);
        deriv(&op, &tmp, &mut k3);

        fill(t + h, &mut op);
        axpy(&state, h, &k3, &mut tmp);
        deriv(&op, &tmp, &mut k4);

        let w = h / T::of(6.0);
        let two = T::of(2.0);
        for i in 0..dim {
            state[i] += (k1[i] + k2[i].scale(two) + k3[i].scale(two) + k4[i]).scale(w);
        }
    }

    let norm_out = state_norm(&state);
    let drift = (norm_out / norm_in - T::one()).abs();
    if drift > T::tol(1e-6) {
        return Err(QdynError::IntegrationFailure {
            drift: drift.to_f64().unwrap_or(f64::NAN),
            t0: t0.to_f64().unwrap_or(f64::NAN),
            t1: t1.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(state)
}

/// Writes `-i H psi` into `out`.
fn deriv<T: Real>(h: &Operator<T>, psi: &[Complex<T>], out: &mut [Complex<T>]) {
    h.matvec_into(psi, out);
    for x in out.iter_mut() {
        *x = Complex::new(x.im, -x.re);
    }
}

/// Writes `base + a * k` into `out`.
fn axpy<T: Real>(base: &[Complex<T>], a: T, k: &[Complex<T>], out: &mut [Complex<T>]) {
    for i in 0..base.len() {
        out[i] = base[i] + k[i].scale(a);
    }
}
