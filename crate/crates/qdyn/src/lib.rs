//! Simulation and analysis of interaction-compensated errors in driven
//! few-level quantum systems.
//!
//! The crate models periodically driven systems (a pulsed two-level system,
//! two driven qubits in their symmetric subspace, and single or paired
//! three-level Raman transfers) whose excited states carry an interaction
//! energy. At particular interaction phases the interaction cancels drive
//! errors exactly; the analysis layers locate and quantify that
//! compensation through fidelity traces, parameter grids, spectral metrics,
//! and one-dimensional searches.
//!
//! The numerical core ([`state`], [`eig`], [`propagate`], [`schedule`]) is
//! generic over the scalar precision through the [`Real`] trait; the model
//! and analysis layers run in `f64`.

// Validation deliberately writes `!(x > bound)` so NaN inputs fail closed;
// the suggested `partial_cmp` form would hide that intent.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dicke;
pub mod eig;
pub mod error;
pub mod fourier;
pub mod model;
pub mod propagate;
pub mod real;
pub mod schedule;
pub mod state;
pub mod stirap;
pub mod sweep;
pub mod twolevel;

pub use error::{QdynError, Result};
pub use real::Real;

/// Double-precision operator.
pub type Operator64 = state::Operator<f64>;
/// Double-precision state vector.
pub type StateVec64 = state::StateVec<f64>;
/// Double-precision cached eigendecomposition.
pub type EigH64 = eig::EigH<f64>;
/// Double-precision schedule.
pub type Schedule64 = schedule::Schedule<f64>;
/// Double-precision segment.
pub type Segment64 = schedule::Segment<f64>;
