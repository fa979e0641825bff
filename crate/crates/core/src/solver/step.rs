use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::{Scheme, SolverConfig};
use super::nonlinear::nonlinear_from_physical;
use crate::error::{Error, Result};
use crate::fourier::ops::leray_project_unchecked;
use crate::fourier::{inverse_transform, Grid, MultiIndex, PhysicalField, SpectralField};
use crate::noise::{NoiseModel, WienerIncrement};

/// Clock and velocity of one Galerkin path.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub t: f64,
    pub u: SpectralField,
}

/// Gate factors multiplying the drift and the noise in one step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gates {
    pub drift: f64,
    pub noise: f64,
}

impl Gates {
    pub const OPEN: Gates = Gates {
        drift: 1.0,
        noise: 1.0,
    };
}

/// Precomputed per-mode factors for one configuration and noise model.
#[derive(Clone, Debug)]
pub struct Stepper {
    cfg: SolverConfig,
    noise: NoiseModel,
    grid: Grid,
    truncation: MultiIndex,
    /// Linear propagator per flat index; zero outside the Galerkin box and at k = 0.
    propagator: Vec<f64>,
}

impl Stepper {
    pub fn new(cfg: &SolverConfig, noise: NoiseModel) -> Result<Self> {
        cfg.validate()?;
        if noise.basis().dim() != cfg.dim {
            return Err(Error::Config(format!(
                "noise basis is {}-d, solver is {}-d",
                noise.basis().dim(),
                cfg.dim
            )));
        }
        let grid = cfg.grid()?;
        let truncation = cfg.truncation();
        let lambda_dt = 4.0 * PI * PI * cfg.dt;
        let propagator = (0..grid.len())
            .map(|i| {
                let k = grid.mode(i);
                if i == 0 || !truncation.contains(&k) || grid.is_nyquist(&k) {
                    return 0.0;
                }
                let l = lambda_dt * grid.mode_norm_sq(i);
                match cfg.scheme {
                    Scheme::ExponentialEm => (-l).exp(),
                    Scheme::SemiImplicitEm => 1.0 / (1.0 + l),
                }
            })
            .collect();
        Ok(Self {
            cfg: cfg.clone(),
            noise,
            grid,
            truncation,
            propagator,
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn truncation(&self) -> &MultiIndex {
        &self.truncation
    }

    /// Checks that `u` is a valid Galerkin state on this stepper's grid.
    pub fn check_state(&self, u: &SpectralField) -> Result<()> {
        if u.grid() != self.grid || u.ncomp() != self.cfg.dim {
            return Err(Error::ShapeMismatch(format!(
                "state must be a {}-component field on {} points per axis",
                self.cfg.dim,
                self.grid.points()
            )));
        }
        if !u.is_supported_in(&self.truncation) {
            return Err(Error::ShapeMismatch("state is not truncated at n".into()));
        }
        u.require_mean_zero()
    }

    /// One Euler–Maruyama step with open gates.
    pub fn step(&self, state: &SolverState, dw: &WienerIncrement) -> Result<SolverState> {
        let phys = inverse_transform(&state.u);
        self.step_gated(state, &phys, None, Gates::OPEN, dw)
    }

    /// One step with the drift evaluated at `state` and the noise coefficient
    /// at `noise_at` (`state` itself when `None`), each scaled by its gate.
    ///
    /// `phys` must hold the lattice samples of `state.u`.
    pub fn step_gated(
        &self,
        state: &SolverState,
        phys: &PhysicalField,
        noise_at: Option<(&SpectralField, &PhysicalField)>,
        gates: Gates,
        dw: &WienerIncrement,
    ) -> Result<SolverState> {
        let dt = self.cfg.dt;
        let mut rhs = state.u.clone();
        if self.cfg.nonlinear && gates.drift != 0.0 {
            let drift = nonlinear_from_physical(phys, &self.truncation);
            rhs.axpy(dt * gates.drift, &drift)?;
        }
        if !self.noise.is_zero() && gates.noise != 0.0 {
            let (nu, nphys) = noise_at.unwrap_or((&state.u, phys));
            let forcing = self.noise.forcing(nu, nphys, dw)?;
            rhs.axpy(gates.noise, &forcing)?;
        }
        for comp in 0..rhs.ncomp() {
            for (c, &f) in rhs.component_mut(comp).iter_mut().zip(&self.propagator) {
                *c *= f;
            }
        }
        rhs.symmetrize();
        let mut u = leray_project_unchecked(&rhs);
        for comp in 0..u.ncomp() {
            u.component_mut(comp)[0] = Complex64::default();
        }
        Ok(SolverState {
            t: state.t + dt,
            u,
        })
    }

    /// Heat flow `e^{tΔ}` of a truncated state, using the scheme's propagator.
    pub fn heat_step(&self, u: &SpectralField) -> SpectralField {
        let mut out = u.clone();
        for comp in 0..out.ncomp() {
            for (c, &f) in out.component_mut(comp).iter_mut().zip(&self.propagator) {
                *c *= f;
            }
        }
        out
    }
}
