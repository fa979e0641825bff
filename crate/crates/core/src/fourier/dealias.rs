use super::field::{PhysicalField, SpectralField};
use super::grid::MultiIndex;
use super::ops::rect_truncate;
use super::transform::{forward_transform, inverse_transform};
use crate::error::{Error, Result};

/// `T_n(U·V)` for fields truncated at `n`, free of aliasing error.
///
/// Components multiply pairwise; a scalar factor broadcasts over a vector
/// factor. The grid must hold at least `4·max(n) + 2` points per axis.
pub fn dealias_product(u: &SpectralField, v: &SpectralField, n: &MultiIndex) -> Result<SpectralField> {
    u.check_same_grid(v)?;
    let grid = u.grid();
    grid.check_dealias(n)?;
    if !u.is_supported_in(n) || !v.is_supported_in(n) {
        return Err(Error::ShapeMismatch(
            "factors of a dealiased product must be truncated at n".into(),
        ));
    }
    let product = pointwise_product(&inverse_transform(u), &inverse_transform(v))?;
    let mut out = rect_truncate(&forward_transform(&product), n)?;
    out.symmetrize();
    Ok(out)
}

/// Pointwise product of sampled fields with scalar broadcasting.
pub fn pointwise_product(a: &PhysicalField, b: &PhysicalField) -> Result<PhysicalField> {
    if a.grid() != b.grid() {
        return Err(Error::ShapeMismatch("product factors live on different grids".into()));
    }
    let ncomp = match (a.ncomp(), b.ncomp()) {
        (x, y) if x == y => x,
        (1, y) => y,
        (x, 1) => x,
        (x, y) => {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {x}-component and {y}-component fields"
            )))
        }
    };
    let pick = |f: &PhysicalField, j: usize| if f.ncomp() == 1 { 0 } else { j };
    let components = (0..ncomp)
        .map(|j| {
            a.component(pick(a, j))
                .iter()
                .zip(b.component(pick(b, j)))
                .map(|(x, y)| x * y)
                .collect()
        })
        .collect();
    PhysicalField::from_components(a.grid(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::grid::Grid;
    use crate::fourier::random::random_band_limited;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Coefficient convolution restricted to the box.
    fn convolution_oracle(u: &SpectralField, v: &SpectralField, n: &MultiIndex) -> SpectralField {
        let grid = u.grid();
        let mut out = SpectralField::zeros(grid, 1);
        for a in 0..grid.len() {
            let ka = grid.mode(a);
            if !n.contains(&ka) {
                continue;
            }
            for b in 0..grid.len() {
                let kb = grid.mode(b);
                if !n.contains(&kb) {
                    continue;
                }
                let sum = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                if n.contains(&sum) {
                    let idx = grid.flat_index(&sum).unwrap();
                    out.component_mut(0)[idx] += u.component(0)[a] * v.component(0)[b];
                }
            }
        }
        out
    }

    #[test]
    fn two_modes_combine() {
        let g = Grid::new(2, 18).unwrap();
        let n = MultiIndex::cube(2, 4);
        let mut u = SpectralField::zeros(g, 1);
        let mut v = SpectralField::zeros(g, 1);
        u.set_mode(0, &[1, 2], Complex64::new(0.5, 0.0));
        v.set_mode(0, &[2, -1], Complex64::new(0.0, 0.25));
        let w = dealias_product(&u, &v, &n).unwrap();
        assert!((w.coefficient(0, &[3, 1]) - Complex64::new(0.0, 0.125)).norm() < 1e-15);
        assert!((w.coefficient(0, &[-3, -1]) - Complex64::new(0.0, -0.125)).norm() < 1e-15);
    }

    #[test]
    fn matches_convolution_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Grid::new(2, 14).unwrap();
        let n = MultiIndex::cube(2, 3);
        for _ in 0..3 {
            let u = random_band_limited(g, 1, &n, &mut rng);
            let v = random_band_limited(g, 1, &n, &mut rng);
            let fast = dealias_product(&u, &v, &n).unwrap();
            let slow = convolution_oracle(&u, &v, &n);
            assert!(fast.max_abs_diff(&slow).unwrap() < 1e-12);
            // mean of the product is Σ_k û(k) v̂(-k)
            let parseval = u.inner(&v).unwrap();
            assert!((fast.component(0)[0].re - parseval).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_small_grid() {
        let g = Grid::new(1, 16).unwrap();
        let n = MultiIndex::cube(1, 4);
        let u = SpectralField::zeros(g, 1);
        assert!(matches!(
            dealias_product(&u, &u, &n),
            Err(Error::Aliasing { required: 18, .. })
        ));
    }
}
