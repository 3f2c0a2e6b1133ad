//! Periodic pulse schedules: ordered segments propagated over many periods.

use crate::eig::{eigh, EigH};
use crate::error::{QdynError, Result};
use crate::propagate::propagate_timedep;
use crate::real::Real;
use crate::state::{Operator, StateVec};
use num_complex::Complex;
use std::sync::Arc;

/// Shared callback writing `H(t)` into the provided operator for
/// segment-local time `t`.
pub type FillFn<T> = Arc<dyn Fn(T, &mut Operator<T>) + Send + Sync>;

/// Evolution generator of one segment.
pub enum Generator<T: Real> {
    /// Constant Hamiltonian, prediagonalized once.
    Constant(EigH<T>),
    /// Time-dependent Hamiltonian; `fill` writes `H(t)` for segment-local `t`
    /// and `dt` is the integrator step bound.
    TimeDependent { fill: FillFn<T>, dt: T },
}

impl<T: Real> Clone for Generator<T> {
    fn clone(&self) -> Self {
        match self {
            Self::Constant(e) => Self::Constant(e.clone()),
            Self::TimeDependent { fill, dt } => Self::TimeDependent {
                fill: Arc::clone(fill),
                dt: *dt,
            },
        }
    }
}

/// One segment of a periodic schedule.
#[derive(Clone)]
pub struct Segment<T: Real> {
    /// Segment duration.
    pub duration: T,
    /// Evolution generator.
    pub generator: Generator<T>,
}

impl<T: Real> Segment<T> {
    /// Segment with a constant Hamiltonian, diagonalized up front.
    pub fn constant(duration: T, h: &Operator<T>) -> Result<Self> {
        Ok(Self {
            duration,
            generator: Generator::Constant(eigh(h)?),
        })
    }

    /// Segment with a time-dependent Hamiltonian over segment-local time
    /// `[0, duration)`.
    pub fn time_dependent(duration: T, fill: FillFn<T>, dt: T) -> Self {
        Self {
            duration,
            generator: Generator::TimeDependent { fill, dt },
        }
    }

    /// Evolves `psi` from segment-local time `t_local` over `span`.
    fn evolve(&self, dim: usize, t_local: T, span: T, psi: &mut StateVec<T>) -> Result<()> {
        if span <= T::zero() {
            return Ok(());
        }
        match &self.generator {
            Generator::Constant(eig) => {
                eig.evolve(span, psi);
                Ok(())
            }
            Generator::TimeDependent { fill, dt } => {
                let out = propagate_timedep(fill.as_ref(), dim, t_local, t_local + span, *dt, psi)?;
                *psi = out;
                Ok(())
            }
        }
    }
}

/// Periodic schedule of segments, applied in order within each period.
pub struct Schedule<T: Real> {
    dim: usize,
    segments: Vec<Segment<T>>,
    bounds: Vec<T>,
}

impl<T: Real> Schedule<T> {
    /// Builds a schedule from ordered segments acting on a `dim`-level system.
    pub fn new(dim: usize, segments: Vec<Segment<T>>) -> Result<Self> {
        if segments.is_empty() {
            return Err(QdynError::InvalidConfig {
                message: "schedule needs at least one segment".into(),
            });
        }
        for s in &segments {
            if s.duration < T::zero() {
                return Err(QdynError::InvalidConfig {
                    message: "segment durations must be nonnegative".into(),
                });
            }
        }
        let mut bounds = Vec::with_capacity(segments.len() + 1);
        let mut acc = T::zero();
        bounds.push(acc);
        for s in &segments {
            acc += s.duration;
            bounds.push(acc);
        }
        if acc <= T::zero() {
            return Err(QdynError::InvalidConfig {
                message: "schedule period must be positive".into(),
            });
        }
        Ok(Self {
            dim,
            segments,
            bounds,
        })
    }

    /// System dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Period length (sum of segment durations).
    pub fn period(&self) -> T {
        *self.bounds.last().unwrap()
    }

    /// Segments in application order.
    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    /// Evolves `psi` over one full period.
    pub fn evolve_period(&self, psi: &mut StateVec<T>) -> Result<()> {
        for s in &self.segments {
            s.evolve(self.dim, T::zero(), s.duration, psi)?;
        }
        Ok(())
    }

    /// Evolves `psi` over `n` full periods.
    pub fn evolve_periods(&self, n: usize, psi: &mut StateVec<T>) -> Result<()> {
        for _ in 0..n {
            self.evolve_period(psi)?;
        }
        Ok(())
    }

    /// Evolves `psi` over the full extent of one segment.
    pub fn evolve_segment(&self, index: usize, psi: &mut StateVec<T>) -> Result<()> {
        let s = &self.segments[index];
        s.evolve(self.dim, T::zero(), s.duration, psi)
    }

    /// Period propagator as a matrix (constant segments only).
    pub fn period_propagator(&self) -> Result<Operator<T>> {
        let mut u = Operator::identity(self.dim);
        for s in &self.segments {
            match &s.generator {
                Generator::Constant(eig) => {
                    u = eig.propagator(s.duration).matmul(&u)?;
                }
                Generator::TimeDependent { .. } => {
                    return Err(QdynError::InvalidConfig {
                        message: "period propagator requires constant segments".into(),
                    });
                }
            }
        }
        Ok(u)
    }

    /// Propagates over `n_periods` periods, sampling `samples_per_period`
    /// equally spaced points per period.
    ///
    /// The callback receives `(t, psi)` with the state recorded before each
    /// advance; the first sample is at `t = 0` and there are exactly
    /// `n_periods * samples_per_period` samples. Returns the state at the end
    /// of the last period.
    pub fn sample<F: FnMut(T, &[Complex<T>])>(
        &self,
        psi0: &[Complex<T>],
        n_periods: usize,
        samples_per_period: usize,
        mut record: F,
    ) -> Result<StateVec<T>> {
        if psi0.len() != self.dim {
            return Err(QdynError::DimensionMismatch {
                context: format!(
                    "state length {} for schedule dimension {}",
                    psi0.len(),
                    self.dim
                ),
            });
        }
        if n_periods == 0 || samples_per_period == 0 {
            return Err(QdynError::InvalidConfig {
                message: "sampling needs at least one period and one sample per period".into(),
            });
        }
        let period = self.period();
        let dt_s = period / T::of(samples_per_period as f64);
        let tiny = period * T::tol(1e-12);
        let mut psi = psi0.to_vec();

        for p in 0..n_periods {
            let t_base = period * T::of(p as f64);
            let mut seg = 0usize;
            let mut tau = T::zero();
            for k in 0..samples_per_period {
                record(t_base + dt_s * T::of(k as f64), &psi);
                let target = if k + 1 == samples_per_period {
                    period
                } else {
                    dt_s * T::of((k + 1) as f64)
                };
                while tau + tiny < target {
                    while seg + 1 < self.segments.len() && self.bounds[seg + 1] <= tau + tiny {
                        seg += 1;
                    }
                    let seg_end = self.bounds[seg + 1];
                    let step = if target < seg_end { target } else { seg_end } - tau;
                    self.segments[seg].evolve(self.dim, tau - self.bounds[seg], step, &mut psi)?;
                    tau += step;
                }
                tau = target;
            }
        }
        Ok(psi)
    }
}
