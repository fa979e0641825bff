//! Seeded random test fields.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::field::SpectralField;
use super::grid::{Grid, MultiIndex};
use super::ops::leray_project_unchecked;

/// Real, mean-zero field with independent Gaussian coefficients on the box
/// `|k_i| <= n_i`. Nyquist modes are never populated.
pub fn random_band_limited<R: Rng + ?Sized>(
    grid: Grid,
    ncomp: usize,
    n: &MultiIndex,
    rng: &mut R,
) -> SpectralField {
    random_with_profile(grid, ncomp, rng, |k| {
        if n.contains(k) {
            Some(1.0)
        } else {
            None
        }
    })
}

/// Random-phase field with `|û(k)| ∝ |k|^{-decay}` for `0 < max_i |k_i| <= kmax`.
pub fn random_power_law<R: Rng + ?Sized>(
    grid: Grid,
    ncomp: usize,
    kmax: usize,
    decay: f64,
    rng: &mut R,
) -> SpectralField {
    let bound = MultiIndex::cube(grid.dim(), kmax);
    random_with_profile(grid, ncomp, rng, |k| {
        if bound.contains(k) {
            let k2: f64 = k.iter().map(|&ki| (ki * ki) as f64).sum();
            Some(k2.powf(-0.5 * decay))
        } else {
            None
        }
    })
}

/// Divergence-free, mean-zero random vector field on the box of `n`.
pub fn random_solenoidal<R: Rng + ?Sized>(grid: Grid, n: &MultiIndex, rng: &mut R) -> SpectralField {
    let u = random_band_limited(grid, grid.dim(), n, rng);
    leray_project_unchecked(&u)
}

fn random_with_profile<R, F>(grid: Grid, ncomp: usize, rng: &mut R, mut amplitude: F) -> SpectralField
where
    R: Rng + ?Sized,
    F: FnMut(&[i64; 3]) -> Option<f64>,
{
    let mut f = SpectralField::zeros(grid, ncomp);
    for i in 0..grid.len() {
        let c = grid.conjugate_index(i);
        if c <= i {
            continue;
        }
        let k = grid.mode(i);
        if grid.is_nyquist(&k) {
            continue;
        }
        if let Some(a) = amplitude(&k) {
            for j in 0..ncomp {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                let z = Complex64::new(re, im) * (a / std::f64::consts::SQRT_2);
                f.component_mut(j)[i] = z;
                f.component_mut(j)[c] = z.conj();
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::ops::divergence_residual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fields_are_real_and_mean_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = Grid::new(3, 8).unwrap();
        let f = random_band_limited(g, 3, &MultiIndex::cube(3, 2), &mut rng);
        assert_eq!(f.hermitian_defect(), 0.0);
        assert_eq!(f.mean_magnitude(), 0.0);
        assert!(f.is_supported_in(&MultiIndex::cube(3, 2)));
        assert!(f.l2_norm() > 0.0);
    }

    #[test]
    fn solenoidal_is_divergence_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = Grid::new(2, 16).unwrap();
        let u = random_solenoidal(g, &MultiIndex::cube(2, 5), &mut rng);
        assert!(divergence_residual(&u).unwrap() < 1e-12);
    }

    #[test]
    fn power_law_skips_nyquist() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Grid::new(1, 16).unwrap();
        let f = random_power_law(g, 1, 8, 1.5, &mut rng);
        assert_eq!(f.coefficient(0, &[-8]), Complex64::default());
        assert!(f.coefficient(0, &[7]).norm() > 0.0);
    }
}
