//! Galerkin convective term `S_n𝒫((u·∇)u)` with exact dealiasing.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::ops::leray_project_unchecked;
use crate::fourier::{
    forward_transform, inverse_transform, partial, pointwise_product, rect_truncate, MultiIndex,
    PhysicalField, SpectralField,
};

/// `-S_n𝒫 Σ_i ∂_i(u_i u)`, the drift of the Galerkin system, in divergence form.
pub fn nonlinear_term(u: &SpectralField, n: &MultiIndex) -> Result<SpectralField> {
    check_inputs(u, n)?;
    Ok(nonlinear_from_physical(&inverse_transform(u), n))
}

/// Divergence-form drift from lattice samples of a field truncated at `n`.
pub(crate) fn nonlinear_from_physical(u: &PhysicalField, n: &MultiIndex) -> SpectralField {
    let grid = u.grid();
    let d = grid.dim();
    // products u_i u_j for i <= j
    let mut products = vec![Vec::new(); d * d];
    for i in 0..d {
        for j in i..d {
            let prod: Vec<f64> = u
                .component(i)
                .iter()
                .zip(u.component(j))
                .map(|(a, b)| a * b)
                .collect();
            let phys = PhysicalField::from_components(grid, vec![prod]).expect("grid sized");
            let spec = forward_transform(&phys).into_components().remove(0);
            products[i * d + j] = spec;
        }
    }
    let two_pi = 2.0 * PI;
    let mut out = SpectralField::zeros(grid, d);
    for idx in 0..grid.len() {
        let k = grid.mode(idx);
        if !n.contains(&k) {
            continue;
        }
        for j in 0..d {
            let mut acc = Complex64::default();
            for (i, &ki) in k[..d].iter().enumerate() {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                acc += Complex64::new(0.0, two_pi * ki as f64) * products[a * d + b][idx];
            }
            out.component_mut(j)[idx] = -acc;
        }
    }
    leray_project_unchecked(&out)
}

/// `S_n𝒫((v·∇)u)` in advective form, products dealiased.
pub fn advective_term(v: &SpectralField, u: &SpectralField, n: &MultiIndex) -> Result<SpectralField> {
    check_inputs(u, n)?;
    check_inputs(v, n)?;
    let grid = u.grid();
    let d = grid.dim();
    let v_phys = inverse_transform(v);
    let mut acc = PhysicalField::zeros(grid, d);
    for i in 0..d {
        let du = inverse_transform(&partial(u, i)?);
        let vi = PhysicalField::from_components(grid, vec![v_phys.component(i).to_vec()])?;
        let term = pointwise_product(&vi, &du)?;
        for j in 0..d {
            for (a, b) in acc.component_mut(j).iter_mut().zip(term.component(j)) {
                *a += b;
            }
        }
    }
    let spec = rect_truncate(&forward_transform(&acc), n)?;
    Ok(leray_project_unchecked(&spec))
}

fn check_inputs(u: &SpectralField, n: &MultiIndex) -> Result<()> {
    let grid = u.grid();
    if u.ncomp() != grid.dim() {
        return Err(Error::ShapeMismatch(format!(
            "convective term needs a {}-component field, got {}",
            grid.dim(),
            u.ncomp()
        )));
    }
    grid.check_dealias(n)?;
    if !u.is_supported_in(n) {
        return Err(Error::ShapeMismatch(
            "field is not truncated at the Galerkin index".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::ops::divergence_residual;
    use crate::fourier::random::random_solenoidal;
    use crate::fourier::Grid;
    use crate::noise::path_rng;

    #[test]
    fn zero_field() {
        let g = Grid::for_truncation(2, 4).unwrap();
        let u = SpectralField::zeros(g, 2);
        assert_eq!(nonlinear_term(&u, &MultiIndex::cube(2, 4)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn forms_agree_and_cancel() {
        for dim in [2, 3] {
            let n = MultiIndex::cube(dim, 4);
            let g = Grid::for_truncation(dim, 4).unwrap();
            let mut rng = path_rng(21, dim as u64);
            for _ in 0..3 {
                let u = random_solenoidal(g, &n, &mut rng);
                let div_form = nonlinear_term(&u, &n).unwrap();
                let adv = advective_term(&u, &u, &n).unwrap();
                let diff = div_form.add(&adv).unwrap().max_abs();
                assert!(diff < 1e-10 * adv.max_abs(), "dim {dim}: {diff}");
                assert!(divergence_residual(&div_form).unwrap() < 1e-10);
                assert!(div_form.mean_magnitude() == 0.0);
                assert!(div_form.is_supported_in(&n));
                let c = u.inner(&div_form).unwrap();
                assert!(c.abs() < 1e-8 * u.l2_norm().powi(2) * u.grad_l2_norm());
            }
        }
    }

    #[test]
    fn rejects_aliasing_grid() {
        let g = Grid::new(2, 16).unwrap();
        let u = SpectralField::zeros(g, 2);
        assert!(matches!(
            nonlinear_term(&u, &MultiIndex::cube(2, 4)),
            Err(Error::Aliasing { .. })
        ));
    }
}
