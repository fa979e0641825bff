//! Fourier multipliers: truncations, derivatives, Riesz transforms, the
//! Leray projector and the Bessel potential.
//!
//! Singular multipliers map `k = 0` to zero. Every multiplier output is
//! re-symmetrized, which zeroes odd symbols on Nyquist modes.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::MultiIndex;
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Rectangular partial sum `T_n`: keeps coefficients with `|k_i| <= n_i`.
pub fn rect_truncate(f: &SpectralField, n: &MultiIndex) -> Result<SpectralField> {
    let grid = f.grid();
    if n.dim() != grid.dim() {
        return Err(Error::ShapeMismatch(format!(
            "multi-index has {} axes, field has {}",
            n.dim(),
            grid.dim()
        )));
    }
    let mut out = f.clone();
    for i in 0..grid.len() {
        if !n.contains(&grid.mode(i)) {
            for j in 0..out.ncomp() {
                out.component_mut(j)[i] = Complex64::default();
            }
        }
    }
    Ok(out)
}

/// Square truncation `S_n = T_{(n,...,n)}`.
pub fn square_truncate(f: &SpectralField, n: usize) -> SpectralField {
    rect_truncate(f, &MultiIndex::cube(f.grid().dim(), n)).expect("cube index matches dimension")
}

/// Bessel potential `J^s`, multiplier `(1 + 4π²|k|²)^{s/2}`.
pub fn bessel_potential(f: &SpectralField, s: f64) -> SpectralField {
    let four_pi_sq = TWO_PI * TWO_PI;
    f.map_multiplier(|k| {
        let k2: f64 = k.iter().map(|&ki| (ki * ki) as f64).sum();
        Complex64::new((1.0 + four_pi_sq * k2).powf(0.5 * s), 0.0)
    })
}

/// Riesz transform `R_j = -∂_j(-Δ)^{-1/2}`, symbol `-i k_j/|k|`.
pub fn riesz_transform(f: &SpectralField, axis: usize) -> Result<SpectralField> {
    check_axis(f, axis)?;
    f.require_mean_zero()?;
    let mut out = f.map_multiplier(|k| {
        let norm = k.iter().map(|&ki| (ki * ki) as f64).sum::<f64>().sqrt();
        if norm == 0.0 {
            Complex64::default()
        } else {
            Complex64::new(0.0, -(k[axis] as f64) / norm)
        }
    });
    out.symmetrize();
    Ok(out)
}

/// Leray projector onto divergence-free fields: `δ_jl - k_j k_l/|k|²` per mode.
pub fn leray_project(u: &SpectralField) -> Result<SpectralField> {
    u.require_mean_zero()?;
    Ok(leray_project_unchecked(u))
}

/// Leray projection that silently discards the mean instead of rejecting it.
pub(crate) fn leray_project_unchecked(u: &SpectralField) -> SpectralField {
    let grid = u.grid();
    let d = grid.dim();
    let mut out = u.clone();
    for i in 0..grid.len() {
        let k = grid.mode(i);
        let k2: f64 = k[..d].iter().map(|&ki| (ki * ki) as f64).sum();
        if k2 == 0.0 {
            for j in 0..out.ncomp() {
                out.component_mut(j)[i] = Complex64::default();
            }
            continue;
        }
        let mut dot = Complex64::default();
        for (axis, &ka) in k[..d].iter().enumerate().take(u.ncomp()) {
            dot += ka as f64 * u.component(axis)[i];
        }
        for (axis, &ka) in k[..d].iter().enumerate().take(u.ncomp()) {
            out.component_mut(axis)[i] = u.component(axis)[i] - dot * (ka as f64 / k2);
        }
    }
    out.symmetrize();
    out
}

/// `Δ^{-1} div`, multiplier `-(1/(4π²|k|²)) Σ_l 2πi k_l` on a vector field.
pub fn inv_laplace_div(u: &SpectralField) -> Result<SpectralField> {
    let grid = u.grid();
    let d = grid.dim();
    if u.ncomp() != d {
        return Err(Error::ShapeMismatch(format!(
            "inv_laplace_div needs {d} components, got {}",
            u.ncomp()
        )));
    }
    let mut out = SpectralField::zeros(grid, 1);
    for i in 0..grid.len() {
        let k = grid.mode(i);
        let k2: f64 = k[..d].iter().map(|&ki| (ki * ki) as f64).sum();
        if k2 == 0.0 {
            continue;
        }
        let mut div = Complex64::default();
        for (axis, &ka) in k[..d].iter().enumerate() {
            div += Complex64::new(0.0, TWO_PI * ka as f64) * u.component(axis)[i];
        }
        out.component_mut(0)[i] = -div / (TWO_PI * TWO_PI * k2);
    }
    out.symmetrize();
    Ok(out)
}

/// Partial derivative `∂_axis` of every component.
pub fn partial(f: &SpectralField, axis: usize) -> Result<SpectralField> {
    check_axis(f, axis)?;
    let mut out = f.map_multiplier(|k| Complex64::new(0.0, TWO_PI * k[axis] as f64));
    out.symmetrize();
    Ok(out)
}

/// Gradient of a scalar field as a `d`-component vector field.
pub fn gradient(f: &SpectralField) -> Result<SpectralField> {
    if f.ncomp() != 1 {
        return Err(Error::ShapeMismatch("gradient needs a scalar field".into()));
    }
    let parts = (0..f.grid().dim())
        .map(|axis| partial(f, axis))
        .collect::<Result<Vec<_>>>()?;
    SpectralField::stack(&parts)
}

/// Divergence of a `d`-component vector field.
pub fn divergence(u: &SpectralField) -> Result<SpectralField> {
    let grid = u.grid();
    let d = grid.dim();
    if u.ncomp() != d {
        return Err(Error::ShapeMismatch(format!(
            "divergence needs {d} components, got {}",
            u.ncomp()
        )));
    }
    let mut out = SpectralField::zeros(grid, 1);
    for i in 0..grid.len() {
        let k = grid.mode(i);
        let mut acc = Complex64::default();
        for (axis, &ka) in k[..d].iter().enumerate() {
            acc += Complex64::new(0.0, TWO_PI * ka as f64) * u.component(axis)[i];
        }
        out.component_mut(0)[i] = acc;
    }
    out.symmetrize();
    Ok(out)
}

/// Largest coefficient of `div u`, a divergence residual in coefficient space.
pub fn divergence_residual(u: &SpectralField) -> Result<f64> {
    Ok(divergence(u)?.max_abs())
}

/// Heat semigroup `e^{tΔ}`, multiplier `e^{-4π²|k|² t}`.
pub fn heat_semigroup(f: &SpectralField, t: f64) -> SpectralField {
    let four_pi_sq = TWO_PI * TWO_PI;
    f.map_multiplier(|k| {
        let k2: f64 = k.iter().map(|&ki| (ki * ki) as f64).sum();
        Complex64::new((-four_pi_sq * k2 * t).exp(), 0.0)
    })
}

fn check_axis(f: &SpectralField, axis: usize) -> Result<()> {
    if axis >= f.grid().dim() {
        return Err(Error::ShapeMismatch(format!(
            "axis {axis} out of range for {}-d field",
            f.grid().dim()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::grid::Grid;
    use crate::fourier::transform::{forward_transform, inverse_transform};
    use crate::fourier::field::PhysicalField;

    fn single_mode(grid: Grid, ncomp: usize, k: &[i64], amp: &[f64]) -> SpectralField {
        let mut f = SpectralField::zeros(grid, ncomp);
        for (j, &a) in amp.iter().enumerate() {
            f.set_mode(j, k, Complex64::new(a, 0.0));
        }
        f
    }

    #[test]
    fn truncation_drops_outside_modes() {
        let g = Grid::new(1, 16).unwrap();
        let f = single_mode(g, 1, &[3], &[1.0]);
        let t = rect_truncate(&f, &MultiIndex::new(vec![2])).unwrap();
        assert_eq!(t.max_abs(), 0.0);
        let f = single_mode(g, 1, &[1], &[1.0]);
        assert_eq!(rect_truncate(&f, &MultiIndex::new(vec![2])).unwrap(), f);
    }

    #[test]
    fn bessel_single_mode() {
        let g = Grid::new(3, 8).unwrap();
        let f = single_mode(g, 1, &[1, 0, 0], &[1.0]);
        let j2 = bessel_potential(&f, 2.0);
        let expected = 1.0 + 4.0 * PI * PI;
        assert!((j2.coefficient(0, &[1, 0, 0]).re - expected).abs() < 1e-12);
        assert_eq!(bessel_potential(&f, 0.0), f);
    }

    #[test]
    fn riesz_shifts_cosine_to_sine() {
        let g = Grid::new(2, 8).unwrap();
        let f = PhysicalField::sample(g, 1, |x, v| v[0] = (2.0 * PI * x[0]).cos());
        let r = riesz_transform(&forward_transform(&f), 0).unwrap();
        let back = inverse_transform(&r);
        // symbol -i on k=+1 turns cos into sin
        let expected = PhysicalField::sample(g, 1, |x, v| v[0] = (2.0 * PI * x[0]).sin());
        assert!(back.max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn riesz_rejects_mean() {
        let g = Grid::new(1, 8).unwrap();
        let f = PhysicalField::sample(g, 1, |_, v| v[0] = 1.0);
        assert!(matches!(
            riesz_transform(&forward_transform(&f), 0),
            Err(Error::NonzeroMean(_))
        ));
        let u = PhysicalField::sample(Grid::new(2, 8).unwrap(), 2, |_, v| v.fill(1.0));
        assert!(leray_project(&forward_transform(&u)).is_err());
    }

    #[test]
    fn leray_single_mode_example() {
        let g = Grid::new(3, 8).unwrap();
        let u = single_mode(g, 3, &[1, 0, 0], &[1.0, 1.0, 0.0]);
        let p = leray_project(&u).unwrap();
        assert!(p.coefficient(0, &[1, 0, 0]).norm() < 1e-15);
        assert!((p.coefficient(1, &[1, 0, 0]).re - 1.0).abs() < 1e-15);
        assert!(p.coefficient(2, &[1, 0, 0]).norm() < 1e-15);
    }

    #[test]
    fn leray_kills_gradients() {
        let g = Grid::new(2, 8).unwrap();
        let mut phi = SpectralField::zeros(g, 1);
        phi.set_mode(0, &[1, 2], Complex64::new(0.4, -0.2));
        phi.set_mode(0, &[-3, 1], Complex64::new(0.1, 0.9));
        let p = leray_project(&gradient(&phi).unwrap()).unwrap();
        assert!(p.max_abs() < 1e-14);
    }

    #[test]
    fn inv_laplace_div_single_mode() {
        let g = Grid::new(2, 8).unwrap();
        let u = single_mode(g, 2, &[1, 2], &[0.5, -1.0]);
        let s = inv_laplace_div(&u).unwrap();
        // -(2πi(1·0.5 + 2·(-1))) / (4π²·5) at k = (1,2)
        let expected = -Complex64::new(0.0, TWO_PI * (0.5 - 2.0)) / (TWO_PI * TWO_PI * 5.0);
        assert!((s.coefficient(0, &[1, 2]) - expected).norm() < 1e-15);
        let c = PhysicalField::sample(g, 2, |_, v| v.fill(3.0));
        assert_eq!(inv_laplace_div(&forward_transform(&c)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn heat_decay_factor() {
        let g = Grid::new(2, 8).unwrap();
        let f = single_mode(g, 1, &[1, 1], &[1.0]);
        let h = heat_semigroup(&f, 0.01);
        let expected = (-8.0 * PI * PI * 0.01f64).exp();
        assert!((h.coefficient(0, &[1, 1]).re - expected).abs() < 1e-15);
    }
}
