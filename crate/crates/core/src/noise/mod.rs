//! Truncated cylindrical Wiener process and noise coefficients `σ`.

pub mod assumptions;
pub mod basis;
pub mod hs;
pub mod increment;
pub mod model;

pub use assumptions::{verify_assumptions, AssumptionReport, RatioStat};
pub use basis::{BasisMode, NoiseBasis, Parity};
pub use hs::{hs_grad_l2_norm, hs_lp_norm};
pub use increment::{path_rng, sample_increment, BrownianPath, WienerIncrement};
pub use model::{
    coefficient_tail, decaying_coefficients, NoiseCoefficient, NoiseKind, NoiseModel, NoiseVariant,
};
