//! Unified handle over the three simulation models.
//!
//! Analysis routines (spectra, parameter grids, magic-value searches) work
//! against this enum so they can vary named dimensionless parameters without
//! knowing which model they drive.

use crate::dicke;
use crate::error::{QdynError, Result};
use crate::schedule::Schedule;
use crate::state::{basis_state, StateVec};
use crate::stirap::{self, StirapConfig};
use crate::twolevel::{self, TwoLevelConfig};
use num_complex::Complex;

/// Level populations visible to outputs; `p_i` exists only for models with
/// an intermediate level.
#[derive(Clone, Copy, Debug)]
pub struct Populations {
    pub p_g: f64,
    pub p_e: f64,
    pub p_i: Option<f64>,
}

/// Configuration of one of the supported models.
#[derive(Clone, Debug)]
pub enum ModelConfig {
    /// Pulsed two-level system.
    TwoLevel(TwoLevelConfig),
    /// Two driven qubits in the symmetric subspace.
    Dicke(dicke::DickeConfig),
    /// Double stimulated Raman transfer (one atom or two).
    Stirap(StirapConfig),
}

impl ModelConfig {
    /// Builds the period schedule.
    pub fn build_schedule(&self) -> Result<Schedule<f64>> {
        match self {
            Self::TwoLevel(c) => twolevel::build_schedule(c),
            Self::Dicke(c) => dicke::build_dicke_schedule(c),
            Self::Stirap(c) => stirap::build_stirap_schedule(c),
        }
    }

    /// Initial state: the fully ground configuration.
    pub fn initial_state(&self) -> StateVec<f64> {
        match self {
            Self::TwoLevel(_) => basis_state(2, twolevel::G),
            Self::Dicke(_) => basis_state(3, dicke::GG),
            Self::Stirap(c) => stirap::initial_state(c),
        }
    }

    /// Configured period count.
    pub fn n_periods(&self) -> usize {
        match self {
            Self::TwoLevel(c) | Self::Dicke(c) => c.n_periods,
            Self::Stirap(c) => c.n_periods,
        }
    }

    /// Overrides the period count.
    pub fn set_n_periods(&mut self, n: usize) {
        match self {
            Self::TwoLevel(c) | Self::Dicke(c) => c.n_periods = n,
            Self::Stirap(c) => c.n_periods = n,
        }
    }

    /// Period duration.
    pub fn period(&self) -> f64 {
        match self {
            Self::TwoLevel(c) | Self::Dicke(c) => c.period(),
            Self::Stirap(c) => c.period(),
        }
    }

    /// Ground fidelity of a state under this model's reading.
    pub fn ground_fidelity(&self, psi: &[Complex<f64>]) -> Result<f64> {
        match self {
            Self::TwoLevel(_) => Ok(psi[twolevel::G].norm_sqr()),
            Self::Dicke(_) => Ok(dicke::fidelity2(psi)),
            Self::Stirap(c) => stirap::populations(c, psi).map(|(p_g, _, _)| p_g),
        }
    }

    /// Level populations of a state.
    pub fn populations(&self, psi: &[Complex<f64>]) -> Result<Populations> {
        match self {
            Self::TwoLevel(_) => Ok(Populations {
                p_g: psi[twolevel::G].norm_sqr(),
                p_e: psi[twolevel::E].norm_sqr(),
                p_i: None,
            }),
            Self::Dicke(_) => {
                let s_half = 0.5 * psi[dicke::S].norm_sqr();
                Ok(Populations {
                    p_g: psi[dicke::GG].norm_sqr() + s_half,
                    p_e: psi[dicke::EE].norm_sqr() + s_half,
                    p_i: None,
                })
            }
            Self::Stirap(c) => {
                let (p_g, p_i, p_e) = stirap::populations(c, psi)?;
                Ok(Populations {
                    p_g,
                    p_e,
                    p_i: Some(p_i),
                })
            }
        }
    }

    /// Ground-excited population difference of a state.
    pub fn population_difference(&self, psi: &[Complex<f64>]) -> Result<f64> {
        let p = self.populations(psi)?;
        Ok(p.p_g - p.p_e)
    }

    /// Ground fidelity after each of the configured periods.
    pub fn fidelity_series(&self) -> Result<Vec<f64>> {
        match self {
            Self::TwoLevel(c) => twolevel::fidelity_series(c),
            Self::Dicke(c) => dicke::fidelity_series_dicke(c),
            Self::Stirap(c) => stirap::fidelity_series_stirap(c),
        }
    }

    /// Sets a named dimensionless parameter.
    ///
    /// Names: `eps` (pulse-area error), `vt2` (interaction phase `v * t2`),
    /// `delta_t1` (pulse detuning times pulse duration), `delta_tg`
    /// (one-photon detuning times pulse width), `omega_tg` (peak drive times
    /// pulse width). Each name is valid only for models that carry the
    /// parameter.
    pub fn set_param(&mut self, name: &str, value: f64) -> Result<()> {
        match (self, name) {
            (Self::TwoLevel(c) | Self::Dicke(c), "eps") => {
                c.eps_rot = value;
                Ok(())
            }
            (Self::TwoLevel(c) | Self::Dicke(c), "vt2") => {
                c.set_v_t2(value);
                Ok(())
            }
            (Self::TwoLevel(c) | Self::Dicke(c), "delta_t1") => {
                c.delta = value / c.t1;
                Ok(())
            }
            (Self::Stirap(c), "vt2") => {
                c.set_v_t2(value);
                Ok(())
            }
            (Self::Stirap(c), "delta_tg") => {
                c.delta = value / c.t_g;
                Ok(())
            }
            (Self::Stirap(c), "omega_tg") => {
                c.omega0 = value / c.t_g;
                Ok(())
            }
            (_, other) => Err(QdynError::InvalidConfig {
                message: format!("unknown or unsupported scan parameter '{other}'"),
            }),
        }
    }
}
