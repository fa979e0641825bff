//! Periodic Fourier operator algebra on `[0,1]^d`.

pub mod dealias;
pub mod fd;
pub mod field;
pub mod grid;
pub mod norms;
pub mod ops;
pub mod random;
pub mod snapshot;
pub mod transform;

pub use dealias::{dealias_product, pointwise_product};
pub use field::{PhysicalField, SpectralField};
pub use grid::{Grid, MultiIndex};
pub use norms::{lp_norm, lp_norm_pow, sobolev_norm, spectral_lp_norm};
pub use ops::{
    bessel_potential, divergence, divergence_residual, gradient, heat_semigroup, inv_laplace_div,
    leray_project, partial, rect_truncate, riesz_transform, square_truncate,
};
pub use snapshot::Snapshot;
pub use transform::{forward_transform, inverse_transform};
pub use fd::{central_difference, central_difference4, composite_gradient_energy, fd_gradient_energy};
