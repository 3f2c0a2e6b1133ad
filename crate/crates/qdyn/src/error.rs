//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by simulation and analysis routines.
#[derive(Debug, Error)]
pub enum QdynError {
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// A Hamiltonian failed the Hermiticity check.
    #[error("operator is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// Norm drift during time-dependent integration exceeded the hard limit.
    #[error("norm drift {drift:.3e} while integrating over [{t0}, {t1}] exceeds 1e-6")]
    IntegrationFailure { drift: f64, t0: f64, t1: f64 },

    /// The iterative eigensolver did not converge.
    #[error("eigendecomposition did not converge (off-diagonal residual {residual:.3e})")]
    EigFailure { residual: f64 },

    /// A one-dimensional minimization found its best value at a bracket edge.
    #[error("no interior minimum in [{a}, {b}]: f(a)={fa:.6e}, f(b)={fb:.6e}")]
    SearchFailure { a: f64, b: f64, fa: f64, fb: f64 },

    /// The reference spectrum has no usable carrier line.
    #[error("reference carrier magnitude below 1e-9; peak metric undefined")]
    DegenerateReference,

    /// The dark-state mixing angle is undefined because both drive fields vanish.
    #[error("mixing angle undefined: both field amplitudes below threshold")]
    UndefinedAngle,

    /// A configuration value is out of range or inconsistent.
    #[error("invalid configuration: {message}")]
    InvalidConfig { message: String },
}

/// Crate-wide result alias.
pub type Result<V> = std::result::Result<V, QdynError>;
