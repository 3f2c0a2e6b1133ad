//! Dense complex matrices and state vectors for few-level quantum systems.
//!
//! Dimensions in this crate are small (2 to 9), so operators are plain
//! row-major `Vec`-backed matrices and states are `Vec<Complex<T>>`.

use crate::error::{QdynError, Result};
use crate::real::Real;
use num_complex::Complex;

/// State vector of a pure quantum state.
pub type StateVec<T> = Vec<Complex<T>>;

/// Dense square complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Operator<T> {
    /// Builds an operator from row-major data; the length must be `dim * dim`.
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(QdynError::DimensionMismatch {
                context: format!("operator data length {} for dimension {}", data.len(), dim),
            });
        }
        Ok(Self { dim, data })
    }

    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        op
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(QdynError::DimensionMismatch {
                context: format!("entry count {} for dimension {}", entries.len(), dim),
            });
        }
        Ok(Self {
            dim,
            data: entries
                .iter()
                .map(|&x| Complex::new(T::of(x), T::zero()))
                .collect(),
        })
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at row `i`, column `j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim + j]
    }

    /// Sets the entry at row `i`, column `j`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex<T>) {
        self.data[i * self.dim + j] = value;
    }

    /// Row-major data slice.
    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Mutable row-major data slice.
    pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    /// Sets every entry to zero, keeping the dimension.
    pub fn clear(&mut self) {
        for x in &mut self.data {
            *x = Complex::new(T::zero(), T::zero());
        }
    }

    /// Matrix-vector product into `out`.
    pub fn matvec_into(&self, psi: &[Complex<T>], out: &mut [Complex<T>]) {
        let n = self.dim;
        debug_assert_eq!(psi.len(), n);
        debug_assert_eq!(out.len(), n);
        for (row, slot) in self.data.chunks_exact(n).zip(out.iter_mut()) {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, b) in row.iter().zip(psi.iter()) {
                acc += *a * *b;
            }
            *slot = acc;
        }
    }

    /// Matrix-vector product.
    pub fn matvec(&self, psi: &[Complex<T>]) -> Result<StateVec<T>> {
        if psi.len() != self.dim {
            return Err(QdynError::DimensionMismatch {
                context: format!(
                    "state length {} for operator dimension {}",
                    psi.len(),
                    self.dim
                ),
            });
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim];
        self.matvec_into(psi, &mut out);
        Ok(out)
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(QdynError::DimensionMismatch {
                context: format!(
                    "matrix product of dimensions {} and {}",
                    self.dim, other.dim
                ),
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik.re == T::zero() && aik.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Largest absolute deviation from Hermiticity, `max |A_ij - conj(A_ji)|`.
    pub fn hermiticity_deviation(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for x in &self.data {
            acc += x.norm_sqr();
        }
        acc.sqrt()
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn offdiag_norm(&self) -> T {
        let n = self.dim;
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += self.data[i * n + j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim != other.dim {
            return Err(QdynError::DimensionMismatch {
                context: format!("difference of dimensions {} and {}", self.dim, other.dim),
            });
        }
        let mut worst = T::zero();
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            let d = (*a - *b).norm();
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    /// Largest absolute deviation from the identity.
    pub fn max_abs_diff_identity(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { T::one() } else { T::zero() };
                let d = (self.data[i * n + j] - Complex::new(target, T::zero())).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Trace.
    pub fn trace(&self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            acc += self.data[i * self.dim + i];
        }
        acc
    }
}

/// Tensor product of two operators; the first factor varies slowest, so the
/// composite index is `i1 * dim2 + i2`.
pub fn tensor_product<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Operator<T> {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut out = Operator::zeros(n);
    for i1 in 0..da {
        for j1 in 0..da {
            let aij = a.get(i1, j1);
            if aij.re == T::zero() && aij.im == T::zero() {
                continue;
            }
            for i2 in 0..db {
                for j2 in 0..db {
                    out.set(i1 * db + i2, j1 * db + j2, aij * b.get(i2, j2));
                }
            }
        }
    }
    out
}

/// Tensor product of two state vectors with the same index convention as
/// [`tensor_product`].
pub fn tensor_product_state<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> StateVec<T> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(*x * *y);
        }
    }
    out
}

/// Euclidean norm of a state vector.
pub fn state_norm<T: Real>(psi: &[Complex<T>]) -> T {
    let mut acc = T::zero();
    for x in psi {
        acc += x.norm_sqr();
    }
    acc.sqrt()
}

/// Population of the basis state with the given index, `|psi[idx]|^2`.
pub fn ground_fidelity<T: Real>(psi: &[Complex<T>], idx: usize) -> T {
    psi[idx].norm_sqr()
}

/// Basis state `|idx>` of the given dimension.
pub fn basis_state<T: Real>(dim: usize, idx: usize) -> StateVec<T> {
    let mut psi = vec![Complex::new(T::zero(), T::zero()); dim];
    psi[idx] = Complex::new(T::one(), T::zero());
    psi
}

/// Reduced density matrix of the first subsystem of a pure bipartite state.
///
/// `psi` has length `d1 * d2` with the first factor varying slowest. For a
/// normalized input the result is Hermitian, positive semidefinite, and has
/// unit trace up to rounding.
pub fn partial_trace_second<T: Real>(
    psi: &[Complex<T>],
    d1: usize,
    d2: usize,
) -> Result<Operator<T>> {
    if psi.len() != d1 * d2 {
        return Err(QdynError::DimensionMismatch {
            context: format!(
                "state length {} for subsystem dimensions {}x{}",
                psi.len(),
                d1,
                d2
            ),
        });
    }
    let mut rho = Operator::zeros(d1);
    for i in 0..d1 {
        for j in 0..d1 {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..d2 {
                acc += psi[i * d2 + k] * psi[j * d2 + k].conj();
            }
            rho.set(i, j, acc);
        }
    }
    Ok(rho)
}
