use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{Grid, MultiIndex};

/// Time discretization of the linear part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Heat semigroup applied exactly per mode: `û⁺ = e^{-λ dt}(û + …)`.
    #[default]
    ExponentialEm,
    /// Backward Euler on the Laplacian: `û⁺ = (û + …)/(1 + λ dt)`.
    SemiImplicitEm,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponential" | "exponential_em" => Ok(Self::ExponentialEm),
            "semi_implicit" | "semi_implicit_em" => Ok(Self::SemiImplicitEm),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Parameters of one Galerkin path simulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub dim: usize,
    /// Square truncation index of `S_n`.
    pub n: usize,
    /// Lattice points per axis; at least `4n + 2`.
    pub points: usize,
    pub dt: f64,
    /// Final time `S`.
    pub horizon: f64,
    /// Integrability exponent, `p > d`.
    pub p: f64,
    /// Stopping level `M`.
    pub cutoff_m: f64,
    pub seed: u64,
    pub scheme: Scheme,
    /// Evaluate the convective term. Off gives the stochastic Stokes problem.
    pub nonlinear: bool,
}

impl SolverConfig {
    /// Desk-scale defaults on the smallest dealiasing grid.
    pub fn new(dim: usize, n: usize) -> Self {
        Self {
            dim,
            n,
            points: 4 * n + 2,
            dt: 1e-3,
            horizon: 0.5,
            p: 4.0,
            cutoff_m: 1e9,
            seed: 0,
            scheme: Scheme::ExponentialEm,
            nonlinear: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let grid = Grid::new(self.dim, self.points)?;
        grid.check_dealias(&self.truncation())?;
        if self.n == 0 {
            return Err(Error::Config("truncation index n must be positive".into()));
        }
        if !(self.p > self.dim as f64) {
            return Err(Error::Config(format!(
                "exponent p = {} must exceed the dimension {}",
                self.p, self.dim
            )));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Config(format!("time step dt = {} must be positive", self.dt)));
        }
        if !(self.horizon >= 0.0) || !self.horizon.is_finite() {
            return Err(Error::Config(format!("horizon {} must be nonnegative", self.horizon)));
        }
        if !(self.cutoff_m > 0.0) {
            return Err(Error::Config(format!("cutoff level M = {} must be positive", self.cutoff_m)));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.dim, self.points)
    }

    pub fn truncation(&self) -> MultiIndex {
        MultiIndex::cube(self.dim, self.n)
    }

    /// Number of steps to reach the horizon.
    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    /// Same configuration at another truncation on its minimal grid.
    pub fn with_truncation(&self, n: usize) -> Self {
        Self {
            n,
            points: 4 * n + 2,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let cfg = SolverConfig::new(2, 8);
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.points, 34);
        let bad = SolverConfig { points: 32, ..cfg.clone() };
        assert!(matches!(bad.validate(), Err(Error::Aliasing { .. })));
        let bad = SolverConfig { p: 2.0, ..cfg.clone() };
        assert!(bad.validate().is_err());
        let bad = SolverConfig { dt: 0.0, ..cfg.clone() };
        assert!(bad.validate().is_err());
        let bad = SolverConfig { cutoff_m: 0.0, ..cfg };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn step_count() {
        let cfg = SolverConfig { horizon: 0.05, dt: 1e-3, ..SolverConfig::new(2, 4) };
        assert_eq!(cfg.steps(), 50);
    }
}
