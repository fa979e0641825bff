use crate::error::{Error, Result};
use crate::fourier::{inverse_transform, SpectralField};

/// `‖G‖_{𝕃^p} = (∫ ‖G(x)‖_{l²}^p dx)^{1/p}` for `G = (σ(u)e_k)_k`.
///
/// The pointwise l² norm runs over modes and vector components.
pub fn hs_lp_norm(fields: &[SpectralField], p: f64) -> Result<f64> {
    let first = fields.first().ok_or(Error::Empty("Hilbert-Schmidt field list"))?;
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let grid = first.grid();
    let mut sq = vec![0.0; grid.len()];
    for f in fields {
        first.check_same_grid(f)?;
        let phys = inverse_transform(f);
        for c in phys.components() {
            for (acc, v) in sq.iter_mut().zip(c) {
                *acc += v * v;
            }
        }
    }
    let integral = sq.iter().map(|s| s.powf(0.5 * p)).sum::<f64>() / grid.len() as f64;
    Ok(integral.powf(1.0 / p))
}

/// `‖∇G‖_{𝕃²}` via Parseval.
pub fn hs_grad_l2_norm(fields: &[SpectralField]) -> f64 {
    fields
        .iter()
        .map(|f| f.grad_l2_norm().powi(2))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::random::random_band_limited;
    use crate::fourier::{spectral_lp_norm, Grid, MultiIndex};
    use crate::noise::increment::path_rng;

    #[test]
    fn singleton_and_duplicate() {
        let g = Grid::new(2, 12).unwrap();
        let f = random_band_limited(g, 1, &MultiIndex::cube(2, 3), &mut path_rng(1, 0));
        let lp = spectral_lp_norm(&f, 3.0).unwrap();
        assert!((hs_lp_norm(&[f.clone()], 3.0).unwrap() - lp).abs() < 1e-13);
        let two = hs_lp_norm(&[f.clone(), f.clone()], 3.0).unwrap();
        assert!((two - 2f64.sqrt() * lp).abs() < 1e-12);
        assert!(hs_lp_norm(&[], 2.0).is_err());
    }

    #[test]
    fn pointwise_oracle() {
        let g = Grid::new(2, 10).unwrap();
        let mut rng = path_rng(4, 0);
        let fields: Vec<_> = (0..3)
            .map(|_| random_band_limited(g, 2, &MultiIndex::cube(2, 2), &mut rng))
            .collect();
        let phys: Vec<_> = fields.iter().map(inverse_transform).collect();
        let p = 5.0;
        let mut integral = 0.0;
        for i in 0..g.len() {
            let mut s = 0.0;
            for f in &phys {
                for j in 0..2 {
                    s += f.component(j)[i].powi(2);
                }
            }
            integral += s.sqrt().powf(p);
        }
        let oracle = (integral / g.len() as f64).powf(1.0 / p);
        assert!((hs_lp_norm(&fields, p).unwrap() - oracle).abs() < 1e-12 * oracle);
    }
}
