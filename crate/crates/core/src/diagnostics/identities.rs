//! Operator identities and the convective cancellation on seeded random fields.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fourier::random::{random_band_limited, random_solenoidal};
use crate::fourier::{
    bessel_potential, divergence, gradient, inv_laplace_div, leray_project, rect_truncate,
    riesz_transform, Grid, MultiIndex, SpectralField,
};
use crate::noise::path_rng;
use crate::solver::advective_term;

use super::report::{VerificationReport, Verdict};

/// Worst relative error of one identity in one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub dim: usize,
    pub fields: usize,
    pub max_relative_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityParams {
    pub dims: Vec<usize>,
    pub fields_per_dim: usize,
    pub seed: u64,
    pub tolerance: f64,
}

fn rel(diff: &SpectralField, reference: &SpectralField) -> f64 {
    let scale = reference.max_abs();
    if scale == 0.0 {
        diff.max_abs()
    } else {
        diff.max_abs() / scale
    }
}

fn grid_for(dim: usize) -> Result<Grid> {
    Grid::new(dim, [64, 32, 16][dim - 1])
}

/// Runs every identity on `fields_per_dim` random fields in each dimension.
pub fn identity_checks(params: &IdentityParams) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for &dim in &params.dims {
        let grid = grid_for(dim)?;
        let band = MultiIndex::cube(dim, grid.points() / 2 - 2);
        let mut rng = path_rng(params.seed, dim as u64);
        let mut worst = [0.0f64; 8];
        for _ in 0..params.fields_per_dim {
            let u = random_band_limited(grid, dim, &band, &mut rng);
            let f = random_band_limited(grid, 1, &band, &mut rng);

            let pu = leray_project(&u)?;
            let ppu = leray_project(&pu)?;
            worst[0] = worst[0].max(rel(&ppu.sub(&pu)?, &u));

            // div(𝒫u) against the size of a full gradient, 2π|k|max‖u‖
            let kmax = 2.0 * PI * (dim as f64).sqrt() * band.max() as f64;
            worst[1] = worst[1].max(divergence(&pu)?.max_abs() / (kmax * u.max_abs()));

            let n: Vec<usize> = (0..dim).map(|_| rng.random_range(0..=band.max())).collect();
            let m: Vec<usize> = (0..dim).map(|_| rng.random_range(0..=band.max())).collect();
            let (n, m) = (MultiIndex::new(n), MultiIndex::new(m));
            let tt = rect_truncate(&rect_truncate(&f, &n)?, &m)?;
            let tmin = rect_truncate(&f, &n.meet(&m))?;
            worst[2] = worst[2].max(rel(&tt.sub(&tmin)?, &f));

            let s = rng.random_range(-3.0..3.0);
            let jj = bessel_potential(&bessel_potential(&f, s), -s);
            worst[3] = worst[3].max(rel(&jj.sub(&f)?, &f));

            let mut rr = SpectralField::zeros(grid, 1);
            for j in 0..dim {
                rr.axpy(1.0, &riesz_transform(&riesz_transform(&f, j)?, j)?)?;
            }
            worst[4] = worst[4].max(rel(&rr.add(&f)?, &f));

            let back = inv_laplace_div(&gradient(&f)?)?;
            worst[5] = worst[5].max(rel(&back.sub(&f)?, &f));

            // Poincaré: ‖f‖₂ <= ‖∇f‖₂/2π, excess relative to ‖f‖₂
            let l2 = f.l2_norm();
            let g2 = f.grad_l2_norm();
            worst[6] = worst[6].max(((l2 - g2 / (2.0 * PI)) / l2).max(0.0));
            // inverse bound on the band: ‖∇f‖₂ <= 2π√d n ‖f‖₂
            let cap = 2.0 * PI * (dim as f64).sqrt() * band.max() as f64 * l2;
            worst[7] = worst[7].max(((g2 - cap) / cap).max(0.0));
        }
        let names = [
            "leray_idempotent",
            "divergence_of_projection",
            "truncation_composition",
            "bessel_inverse",
            "riesz_square_sum",
            "inverse_laplacian_divergence_gradient",
            "poincare",
            "band_inverse_inequality",
        ];
        for (name, err) in names.into_iter().zip(worst) {
            out.push(IdentityCheck {
                identity: name,
                dim,
                fields: params.fields_per_dim,
                max_relative_error: err,
            });
        }
    }
    Ok(out)
}

pub fn identity_report(params: &IdentityParams) -> Result<VerificationReport> {
    let checks = identity_checks(params)?;
    let verdicts = checks
        .iter()
        .map(|c| {
            Verdict::new(
                format!("{}_d{}", c.identity, c.dim),
                c.max_relative_error < params.tolerance,
                format!("max relative error {:.3e}", c.max_relative_error),
            )
        })
        .collect();
    VerificationReport::new("operator_identities", params, &checks, verdicts)
}

/// Worst normalized cancellation `|∫u·S_n𝒫((v·∇)u)| / (‖u‖₂²‖∇v‖₂)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CancellationCheck {
    pub dim: usize,
    pub n: usize,
    pub pairs: usize,
    pub max_ratio: f64,
}

pub fn cancellation_check(dim: usize, n: usize, pairs: usize, seed: u64) -> Result<CancellationCheck> {
    let grid = Grid::for_truncation(dim, n)?;
    let box_n = MultiIndex::cube(dim, n);
    let mut rng = path_rng(seed, 100 + dim as u64);
    let mut max_ratio = 0.0f64;
    for _ in 0..pairs {
        let u = random_solenoidal(grid, &box_n, &mut rng);
        let v = random_solenoidal(grid, &box_n, &mut rng);
        let b = advective_term(&v, &u, &box_n)?;
        let ratio = u.inner(&b)?.abs() / (u.l2_norm().powi(2) * v.grad_l2_norm());
        max_ratio = max_ratio.max(ratio);
    }
    Ok(CancellationCheck {
        dim,
        n,
        pairs,
        max_ratio,
    })
}

pub fn cancellation_report(check: &CancellationCheck, tolerance: f64) -> Result<VerificationReport> {
    let verdict = Verdict::new(
        "convective_cancellation",
        check.max_ratio < tolerance,
        format!("max ratio {:.3e}", check.max_ratio),
    );
    VerificationReport::new("cancellation", &tolerance, check, vec![verdict])
}
