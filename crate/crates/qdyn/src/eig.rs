//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Matrices here are tiny (dimension 2 to 9), where Jacobi sweeps are fast,
//! deterministic, and accurate to a few ulps. The decomposition is cached so
//! a segment's propagator can be applied for arbitrary durations at `O(n^2)`
//! cost per application.

use crate::error::{QdynError, Result};
use crate::real::Real;
use crate::state::{Operator, StateVec};
use num_complex::Complex;

const MAX_SWEEPS: usize = 60;

/// Cached eigendecomposition of a Hermitian operator.
///
/// Columns of `vectors` are orthonormal eigenvectors; `lambda` holds the
/// matching real eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct EigH<T: Real> {
    lambda: Vec<T>,
    vectors: Operator<T>,
}

impl<T: Real> EigH<T> {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[T] {
        &self.lambda
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &Operator<T> {
        &self.vectors
    }

    /// Dimension of the decomposed operator.
    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    /// Applies `exp(-i H dt)` to `psi` in place.
    pub fn evolve(&self, dt: T, psi: &mut [Complex<T>]) {
        let n = self.dim();
        let v = &self.vectors;
        let mut coeff = vec![Complex::new(T::zero(), T::zero()); n];
        for (k, c) in coeff.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (i, amp) in psi.iter().enumerate() {
                acc += v.get(i, k).conj() * *amp;
            }
            let phase = -self.lambda[k] * dt;
            acc *= Complex::new(phase.cos(), phase.sin());
            *c = acc;
        }
        for (i, amp) in psi.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (k, c) in coeff.iter().enumerate() {
                acc += v.get(i, k) * *c;
            }
            *amp = acc;
        }
    }

    /// Propagator matrix `exp(-i H dt)`.
    pub fn propagator(&self, dt: T) -> Operator<T> {
        let n = self.dim();
        let v = &self.vectors;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    let phase = -self.lambda[k] * dt;
                    let e = Complex::new(phase.cos(), phase.sin());
                    acc += v.get(i, k) * e * v.get(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Reconstructs `H` from the decomposition (mainly for tests).
    pub fn reconstruct(&self) -> Operator<T> {
        let n = self.dim();
        let v = &self.vectors;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc +=
                        v.get(i, k) * Complex::new(self.lambda[k], T::zero()) * v.get(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian operator.
///
/// The input is checked for Hermiticity relative to its overall scale and
/// rejected if it deviates. Convergence beyond [`MAX_SWEEPS`] cyclic sweeps is
/// reported as an error carrying the remaining off-diagonal residual.
pub fn eigh<T: Real>(h: &Operator<T>) -> Result<EigH<T>> {
    let n = h.dim();
    let scale = h.frobenius_norm() + T::one();
    let dev = h.hermiticity_deviation();
    if dev > T::tol(1e-9) * scale {
        return Err(QdynError::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut a = h.clone();
    let mut v: Operator<T> = Operator::identity(n);
    let stop = T::epsilon() * T::of(n as f64) * scale;
    let mut converged = false;

    for _ in 0..MAX_SWEEPS {
        if a.offdiag_norm() <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && a.offdiag_norm() > stop {
        return Err(QdynError::EigFailure {
            residual: a.offdiag_norm().to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut pairs: Vec<(T, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));

    let lambda: Vec<T> = pairs.iter().map(|&(l, _)| l).collect();
    let mut vectors = Operator::zeros(n);
    for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_col, v.get(i, old_col));
        }
    }
    Ok(EigH { lambda, vectors })
}

/// One complex Jacobi rotation zeroing the `(p, q)` entry.
fn rotate<T: Real>(a: &mut Operator<T>, v: &mut Operator<T>, p: usize, q: usize) {
    let n = a.dim();
    let beta = a.get(p, q);
    let ab = beta.norm();
    let small = T::epsilon() * (a.get(p, p).norm() + a.get(q, q).norm() + T::one());
    if ab <= small {
        return;
    }
    let phase = beta / ab;
    let alpha = a.get(p, p).re;
    let gamma = a.get(q, q).re;
    let zeta = (gamma - alpha) / (ab + ab);
    let t = if zeta == T::zero() {
        T::one()
    } else {
        let sign = if zeta > T::zero() {
            T::one()
        } else {
            -T::one()
        };
        sign / (zeta.abs() + (zeta * zeta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // Composite unitary on coordinates (p, q):
    //   u00 = c, u01 = s, u10 = -s e^{-i phi}, u11 = c e^{-i phi}
    let cc = Complex::new(c, T::zero());
    let sc = Complex::new(s, T::zero());
    let e_m = phase.conj();
    let e_p = phase;

    // Left action of U^dagger on rows p and q.
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, cc * apj - sc * e_p * aqj);
        a.set(q, j, sc * apj + cc * e_p * aqj);
    }
    // Right action of U on columns p and q.
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, cc * aip - sc * e_m * aiq);
        a.set(i, q, sc * aip + cc * e_m * aiq);
    }
    // Accumulate eigenvectors.
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, cc * vip - sc * e_m * viq);
        v.set(i, q, sc * vip + cc * e_m * viq);
    }

    // Clean rounding debris on the zeroed pair and the diagonal.
    let zero = Complex::new(T::zero(), T::zero());
    a.set(p, q, zero);
    a.set(q, p, zero);
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, Complex::new(app.re, T::zero()));
    a.set(q, q, Complex::new(aqq.re, T::zero()));
}

/// Applies `exp(-i H dt)` to a copy of `psi` for a Hermitian `H`.
pub fn evolve_constant<T: Real>(h: &Operator<T>, dt: T, psi: &[Complex<T>]) -> Result<StateVec<T>> {
    if psi.len() != h.dim() {
        return Err(QdynError::DimensionMismatch {
            context: format!(
                "state length {} for operator dimension {}",
                psi.len(),
                h.dim()
            ),
        });
    }
    let eig = eigh(h)?;
    let mut out = psi.to_vec();
    eig.evolve(dt, &mut out);
    Ok(out)
}
