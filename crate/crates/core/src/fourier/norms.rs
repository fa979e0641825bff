//! Lattice-quadrature norms. Vector fields use the pointwise Euclidean magnitude.

use super::field::{PhysicalField, SpectralField};
use super::ops::bessel_potential;
use super::transform::inverse_transform;
use crate::error::{Error, Result};

/// `|v|^p`, with repeated multiplication for integer `p`.
pub(crate) fn abs_pow(v: f64, p: f64) -> f64 {
    if p.fract() == 0.0 && p.abs() <= 64.0 {
        v.abs().powi(p as i32)
    } else {
        v.abs().powf(p)
    }
}

/// `∫ |f|^p dx` by the rectangle rule on the torus.
pub fn lp_norm_pow(f: &PhysicalField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let n = f.grid().len() as f64;
    let sum: f64 = if f.ncomp() == 1 {
        f.component(0).iter().map(|&v| abs_pow(v, p)).sum()
    } else {
        f.magnitude().iter().map(|&v| abs_pow(v, p)).sum()
    };
    Ok(sum / n)
}

/// `‖f‖_p = (∫ |f|^p dx)^{1/p}`.
pub fn lp_norm(f: &PhysicalField, p: f64) -> Result<f64> {
    Ok(lp_norm_pow(f, p)?.powf(1.0 / p))
}

/// `‖J^s f‖_p`, the `W^{s,p}` norm.
pub fn sobolev_norm(f: &SpectralField, s: f64, p: f64) -> Result<f64> {
    lp_norm(&inverse_transform(&bessel_potential(f, s)), p)
}

/// `‖f‖_p` of a spectral field, evaluated on its own grid.
pub fn spectral_lp_norm(f: &SpectralField, p: f64) -> Result<f64> {
    lp_norm(&inverse_transform(f), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::grid::Grid;
    use crate::fourier::transform::forward_transform;
    use std::f64::consts::PI;

    #[test]
    fn constant_has_unit_norm() {
        let g = Grid::new(2, 8).unwrap();
        let f = PhysicalField::sample(g, 1, |_, v| v[0] = 1.0);
        for p in [1.0, 2.0, 3.5, 12.0] {
            assert!((lp_norm(&f, p).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sine_l2() {
        let g = Grid::new(1, 32).unwrap();
        let f = PhysicalField::sample(g, 1, |x, v| v[0] = (2.0 * PI * x[0]).sin());
        assert!((lp_norm(&f, 2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
        // cross-check against a much finer midpoint quadrature
        let m = 100_000;
        let fine: f64 = (0..m)
            .map(|i| (2.0 * PI * (i as f64 + 0.5) / m as f64).sin().powi(2))
            .sum::<f64>()
            / m as f64;
        assert!((lp_norm(&f, 2.0).unwrap() - fine.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn homogeneity() {
        let g = Grid::new(2, 8).unwrap();
        let f = PhysicalField::sample(g, 2, |x, v| {
            v[0] = (2.0 * PI * x[0]).sin() + 0.3;
            v[1] = (2.0 * PI * x[1]).cos();
        });
        let mut g2 = f.clone();
        for j in 0..2 {
            g2.component_mut(j).iter_mut().for_each(|v| *v *= -3.0);
        }
        let a = lp_norm(&f, 3.0).unwrap();
        let b = lp_norm(&g2, 3.0).unwrap();
        assert!((b - 3.0 * a).abs() < 1e-13);
    }

    #[test]
    fn rejects_small_p() {
        let g = Grid::new(1, 8).unwrap();
        let f = PhysicalField::zeros(g, 1);
        assert!(matches!(lp_norm(&f, 0.5), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn sobolev_zero_order_is_lp() {
        let g = Grid::new(1, 16).unwrap();
        let f = PhysicalField::sample(g, 1, |x, v| v[0] = (4.0 * PI * x[0]).cos());
        let fh = forward_transform(&f);
        assert!((sobolev_norm(&fh, 0.0, 4.0).unwrap() - lp_norm(&f, 4.0).unwrap()).abs() < 1e-13);
        // J^1 of cos(2π·2x) scales amplitude by (1 + 16π²)^{1/2}
        let expected = (1.0 + 16.0 * PI * PI).sqrt() * 0.5f64.sqrt();
        assert!((sobolev_norm(&fh, 1.0, 2.0).unwrap() - expected).abs() < 1e-11);
    }
}
