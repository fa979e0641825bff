//! `L^p` energy functionals and the Gagliardo–Nirenberg ratio.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::random::random_band_limited;
use crate::fourier::{
    composite_gradient_energy, inverse_transform, lp_norm_pow, Grid, MultiIndex, PhysicalField, SpectralField,
};
use crate::noise::path_rng;

use super::report::{VerificationReport, Verdict};

/// `(‖u‖_p^p, Σ_j ∫|∇(|u_j|^{p/2})|² dx)`, the gradient by centered differences.
pub fn energy_functional(u: &SpectralField, p: f64) -> Result<(f64, f64)> {
    if !(p >= 2.0) {
        return Err(Error::InvalidExponent(p));
    }
    let phys = inverse_transform(u);
    Ok((lp_norm_pow(&phys, p)?, composite_gradient_energy(&phys, p)?))
}

/// `‖f‖_{3p}^p / ‖∇(|f|^{p/2})‖₂²` for a nonzero mean-zero field.
pub fn gn_ratio(f: &SpectralField, p: f64) -> Result<f64> {
    if !(p >= 2.0) {
        return Err(Error::InvalidExponent(p));
    }
    f.require_mean_zero()?;
    if f.max_abs() == 0.0 {
        return Err(Error::ZeroField);
    }
    physical_gn_ratio(&inverse_transform(f), p)
}

fn physical_gn_ratio(phys: &PhysicalField, p: f64) -> Result<f64> {
    let num = lp_norm_pow(phys, 3.0 * p)?.powf(1.0 / 3.0);
    Ok(num / composite_gradient_energy(phys, p)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnStudy {
    pub dim: usize,
    pub p: f64,
    pub band: usize,
    pub corpus_size: usize,
    pub coarse_points: usize,
    pub fine_points: usize,
    pub max_ratio_coarse: f64,
    pub max_ratio_fine: f64,
    /// `|fine − coarse| / fine` of the corpus maxima.
    pub refinement_change: f64,
    /// Worst `|r(λf) − r(f)| / r(f)` over the corpus and `λ ∈ {1e-3, 7.5, 1e3}`.
    pub scale_defect: f64,
}

/// GN ratio over `count` random scalar fields of band `band`, evaluated on a
/// `coarse_points` lattice and again on twice as many points per axis.
pub fn gn_study(dim: usize, p: f64, band: usize, count: usize, coarse_points: usize, seed: u64) -> Result<GnStudy> {
    let coarse = Grid::new(dim, coarse_points)?;
    let fine = Grid::new(dim, 2 * coarse_points)?;
    let mut rng = path_rng(seed, 400 + dim as u64);
    let box_n = MultiIndex::cube(dim, band);
    let mut max_c = 0.0f64;
    let mut max_f = 0.0f64;
    let mut scale_defect = 0.0f64;
    for _ in 0..count {
        let f = random_band_limited(coarse, 1, &box_n, &mut rng);
        let rc = gn_ratio(&f, p)?;
        let rf = gn_ratio(&f.resample(fine)?, p)?;
        let phys = inverse_transform(&f);
        if !rc.is_finite() || !rf.is_finite() {
            return Err(Error::Config("non-finite GN ratio".into()));
        }
        for lambda in [1e-3, 7.5, 1e3] {
            let scaled = PhysicalField::from_components(
                coarse,
                phys.components().iter().map(|c| c.iter().map(|v| lambda * v).collect()).collect(),
            )?;
            let r = physical_gn_ratio(&scaled, p)?;
            scale_defect = scale_defect.max((r - rc).abs() / rc);
        }
        max_c = max_c.max(rc);
        max_f = max_f.max(rf);
    }
    Ok(GnStudy {
        dim,
        p,
        band,
        corpus_size: count,
        coarse_points,
        fine_points: 2 * coarse_points,
        max_ratio_coarse: max_c,
        max_ratio_fine: max_f,
        refinement_change: (max_f - max_c).abs() / max_f,
        scale_defect,
    })
}

pub fn gn_report(s: &GnStudy, scale_tol: f64, refine_tol: f64) -> Result<VerificationReport> {
    let verdicts = vec![
        Verdict::new(
            "gn_finite",
            s.max_ratio_coarse.is_finite() && s.max_ratio_fine.is_finite(),
            format!("max ratio {:.6e} / {:.6e}", s.max_ratio_coarse, s.max_ratio_fine),
        ),
        Verdict::new(
            "gn_scale_invariant",
            s.scale_defect < scale_tol,
            format!("defect {:.3e}", s.scale_defect),
        ),
        Verdict::new(
            "gn_refinement_stable",
            s.refinement_change < refine_tol,
            format!("change {:.4}", s.refinement_change),
        ),
    ];
    VerificationReport::new("gagliardo_nirenberg", &(scale_tol, refine_tol), s, verdicts)
}
