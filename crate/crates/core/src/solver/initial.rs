use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::ops::leray_project_unchecked;
use crate::fourier::{forward_transform, square_truncate, spectral_lp_norm, Grid, PhysicalField, SpectralField};

/// Divergence-free, mean-zero initial datum `u_0`, defined independently of
/// any grid so that `S_n u_0` is consistent across truncations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    Zero,
    /// `A(sin 2πx cos 2πy, -cos 2πx sin 2πy[, 0])` (times `cos 2πz` in 3-d).
    TaylorGreen { amplitude: f64 },
    /// Leray projection of Gaussian coefficients with `|û(k)| ∝ A|k|^{-decay}`
    /// on `max_i |k_i| <= kmax`.
    RandomSpectrum {
        seed: u64,
        amplitude: f64,
        kmax: usize,
        decay: f64,
    },
}

impl InitialCondition {
    /// `S_n u_0` on `grid`.
    pub fn build(&self, grid: Grid, n: usize) -> Result<SpectralField> {
        let d = grid.dim();
        if d < 2 {
            return Err(Error::Config("initial data need dimension 2 or 3".into()));
        }
        let full = match self {
            Self::Zero => SpectralField::zeros(grid, d),
            Self::TaylorGreen { amplitude } => {
                let a = *amplitude;
                let phys = PhysicalField::sample(grid, d, |x, v| {
                    let (sx, cx) = (2.0 * PI * x[0]).sin_cos();
                    let (sy, cy) = (2.0 * PI * x[1]).sin_cos();
                    let cz = if d == 3 { (2.0 * PI * x[2]).cos() } else { 1.0 };
                    v[0] = a * sx * cy * cz;
                    v[1] = -a * cx * sy * cz;
                    if d == 3 {
                        v[2] = 0.0;
                    }
                });
                let mut f = forward_transform(&phys);
                f.symmetrize();
                f
            }
            Self::RandomSpectrum {
                seed,
                amplitude,
                kmax,
                decay,
            } => random_spectrum(grid, *seed, *amplitude, *kmax, *decay),
        };
        let mut out = leray_project_unchecked(&square_truncate(&full, n));
        out.remove_mean();
        Ok(out)
    }

    /// `M = 2 sup_n ‖S_n u_0‖_p + 1` over the given truncations.
    pub fn cutoff_level(&self, dim: usize, truncations: &[usize], p: f64) -> Result<f64> {
        let mut sup: f64 = 0.0;
        for &n in truncations {
            let grid = Grid::for_truncation(dim, n)?;
            sup = sup.max(spectral_lp_norm(&self.build(grid, n)?, p)?);
        }
        Ok(2.0 * sup + 1.0)
    }
}

fn random_spectrum(grid: Grid, seed: u64, amplitude: f64, kmax: usize, decay: f64) -> SpectralField {
    let d = grid.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(grid, d);
    let r = kmax as i64;
    let mut k = [0i64; 3];
    let axis_range = |axis: usize| if axis < d { -r..=r } else { 0..=0 };
    for a in axis_range(0) {
        for b in axis_range(1) {
            for c in axis_range(2) {
                k = [a, b, c];
                // one draw per half-space wavevector, in a grid-independent order
                let first = k.iter().find(|&&x| x != 0);
                if !matches!(first, Some(&x) if x > 0) {
                    continue;
                }
                let k2: f64 = k.iter().map(|&x| (x * x) as f64).sum();
                let scale = amplitude * k2.powf(-0.5 * decay) / std::f64::consts::SQRT_2;
                for j in 0..d {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    if let Some(idx) = grid.flat_index(&k) {
                        if !grid.is_nyquist(&grid.mode(idx)) {
                            f.set_mode(j, &k[..d], Complex64::new(re, im) * scale);
                        }
                    }
                }
            }
        }
    }
    let _ = k;
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::ops::divergence_residual;
    use crate::fourier::MultiIndex;

    #[test]
    fn consistent_across_grids() {
        let ic = InitialCondition::RandomSpectrum {
            seed: 3,
            amplitude: 1.0,
            kmax: 12,
            decay: 2.0,
        };
        let coarse = ic.build(Grid::for_truncation(2, 4).unwrap(), 4).unwrap();
        let fine = ic.build(Grid::for_truncation(2, 16).unwrap(), 16).unwrap();
        let fine_cut = square_truncate(&fine, 4).resample(coarse.grid()).unwrap();
        assert!(coarse.max_abs_diff(&fine_cut).unwrap() < 1e-15);
        assert!(fine.is_supported_in(&MultiIndex::cube(2, 16)));
        assert!(fine.l2_norm() > coarse.l2_norm());
    }

    #[test]
    fn constraints_hold() {
        for dim in [2, 3] {
            for ic in [
                InitialCondition::TaylorGreen { amplitude: 2.0 },
                InitialCondition::RandomSpectrum {
                    seed: 1,
                    amplitude: 1.0,
                    kmax: 6,
                    decay: 1.5,
                },
            ] {
                let u = ic.build(Grid::for_truncation(dim, 4).unwrap(), 4).unwrap();
                assert!(divergence_residual(&u).unwrap() < 1e-12);
                assert_eq!(u.mean_magnitude(), 0.0);
                assert!(u.l2_norm() > 0.0);
            }
        }
    }

    #[test]
    fn taylor_green_energy() {
        let u = InitialCondition::TaylorGreen { amplitude: 1.0 }
            .build(Grid::for_truncation(2, 2).unwrap(), 2)
            .unwrap();
        // ∫ sin²cos² + cos²sin² = 1/2
        assert!((u.l2_norm().powi(2) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn cutoff_level_formula() {
        let ic = InitialCondition::Zero;
        assert_eq!(ic.cutoff_level(2, &[4, 8], 4.0).unwrap(), 1.0);
    }
}
