//! Scalar abstraction for the numerical core.
//!
//! Core linear algebra and propagation are generic over a real scalar so the
//! same code runs in `f32` or `f64`. Model and analysis layers use the `f64`
//! aliases exported from the crate root.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};

/// Real scalar usable by the numerical core.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    ///
    /// Panics if the value is not representable; tolerance constants and
    /// physical parameters in this crate are all well inside `f32` range.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// A tolerance usable at this precision: `tol` for `f64`, widened to at
    /// least `50 * epsilon` so contracts stated for `f64` stay honest in
    /// lower-precision instantiations.
    fn tol(tol: f64) -> Self {
        let t = Self::of(tol);
        let floor = Self::epsilon() * Self::of(50.0);
        if t < floor {
            floor
        } else {
            t
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
