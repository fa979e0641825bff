//! Spectral Galerkin simulation of the stochastic Navier–Stokes equations
//! with multiplicative noise on the periodic torus `[0,1]^d`, together with
//! numerical checks of the operator inequalities and energy bounds that the
//! Galerkin scheme relies on.

pub mod error;
pub mod fourier;
pub mod noise;
pub mod solver;
pub mod diagnostics;
pub mod config;
pub mod commands;

pub use error::{Error, Result};
