//! Sampled checks of the growth, Lipschitz, structure and gradient
//! conditions on a noise coefficient.
//!
//! Each ratio is evaluated on the corpus scaled by an amplitude ladder. A
//! ratio counts as bounded when its corpus maximum is finite and grows by at
//! most [`GROWTH_TOLERANCE`] between the two largest amplitudes; a
//! super-linear coefficient grows by roughly the amplitude step there.

use serde::Serialize;

use super::hs::{hs_grad_l2_norm, hs_lp_norm};
use super::model::NoiseModel;
use crate::error::{Error, Result};
use crate::fourier::ops::divergence_residual;
use crate::fourier::{spectral_lp_norm, SpectralField};

pub const AMPLITUDES: [f64; 5] = [1.0, 4.0, 16.0, 64.0, 256.0];
pub const GROWTH_TOLERANCE: f64 = 1.5;
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct RatioStat {
    pub label: String,
    /// Corpus maximum at each amplitude of [`AMPLITUDES`].
    pub per_amplitude: Vec<f64>,
    pub max: f64,
    /// Ratio between the maxima at the two largest amplitudes.
    pub growth_factor: f64,
    pub bounded: bool,
}

impl RatioStat {
    fn new(label: String, per_amplitude: Vec<f64>) -> Self {
        let max = per_amplitude.iter().copied().fold(0.0, f64::max);
        let last = per_amplitude[per_amplitude.len() - 1];
        let prev = per_amplitude[per_amplitude.len() - 2];
        let growth_factor = if prev == 0.0 && last == 0.0 { 1.0 } else { last / prev };
        let bounded = per_amplitude.iter().all(|v| v.is_finite()) && growth_factor <= GROWTH_TOLERANCE;
        Self {
            label,
            per_amplitude,
            max,
            growth_factor,
            bounded,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AssumptionReport {
    pub model: String,
    pub p: f64,
    pub corpus_size: usize,
    pub hilbert_schmidt_mass: f64,
    /// `‖σ(u)‖_{𝕃^r} / (‖u‖_r + 1)` for `r ∈ {2, p, 3p}`.
    pub growth: Vec<RatioStat>,
    /// `‖σ(u) − σ(v)‖_{𝕃^r} / ‖u − v‖_r` for `r ∈ {2, p}`.
    pub lipschitz: Vec<RatioStat>,
    /// `‖∇σ(u)‖_{𝕃²} / ‖u‖₂`.
    pub gradient: RatioStat,
    /// Largest divergence coefficient of `σ(u)e_k` over divergence-free inputs.
    pub divergence_residual: f64,
    /// Largest mean of `σ(u)e_k` over the corpus.
    pub mean_residual: f64,
    pub pass: bool,
}

/// Checks the noise conditions over a corpus of mean-zero fields.
pub fn verify_assumptions(model: &NoiseModel, corpus: &[SpectralField], p: f64) -> Result<AssumptionReport> {
    if corpus.is_empty() {
        return Err(Error::Empty("assumption corpus"));
    }
    if let Some(f) = corpus.iter().find(|f| !f.is_mean_zero(1e-12)) {
        return Err(Error::NonzeroMean(f.mean_magnitude()));
    }
    let growth_r = [2.0, p, 3.0 * p];
    let lip_r = [2.0, p];
    let mut growth = vec![vec![0.0f64; AMPLITUDES.len()]; growth_r.len()];
    let mut lipschitz = vec![vec![0.0f64; AMPLITUDES.len()]; lip_r.len()];
    let mut gradient = vec![0.0f64; AMPLITUDES.len()];
    let mut divergence = 0.0f64;
    let mut mean = 0.0f64;

    for (a, &lambda) in AMPLITUDES.iter().enumerate() {
        let scaled: Vec<SpectralField> = corpus.iter().map(|f| f.scale(lambda)).collect();
        let sigmas = scaled
            .iter()
            .map(|u| model.apply_sigma(u))
            .collect::<Result<Vec<_>>>()?;
        for (u, s) in scaled.iter().zip(&sigmas) {
            for (slot, &r) in growth.iter_mut().zip(&growth_r) {
                let ratio = hs_lp_norm(s, r)? / (spectral_lp_norm(u, r)? + 1.0);
                slot[a] = slot[a].max(ratio);
            }
            let unorm = u.l2_norm();
            if unorm > 0.0 {
                gradient[a] = gradient[a].max(hs_grad_l2_norm(s) / unorm);
            }
            let div_free = u.ncomp() == u.grid().dim() && divergence_residual(u)? < RESIDUAL_TOLERANCE;
            for f in s {
                mean = mean.max(f.mean_magnitude() / lambda);
                if div_free && f.ncomp() == f.grid().dim() {
                    divergence = divergence.max(divergence_residual(f)? / lambda);
                }
            }
        }
        // consecutive pairs; a single field is paired with half of itself
        let pairs: Vec<(usize, usize)> = if scaled.len() == 1 {
            vec![(0, 0)]
        } else {
            (0..scaled.len() - 1).map(|i| (i, i + 1)).collect()
        };
        for (i, j) in pairs {
            let (v, sv) = if i == j {
                let v = scaled[i].scale(0.5);
                let sv = model.apply_sigma(&v)?;
                (v, sv)
            } else {
                (scaled[j].clone(), sigmas[j].clone())
            };
            let diff_u = scaled[i].sub(&v)?;
            let diff_s = sigmas[i]
                .iter()
                .zip(&sv)
                .map(|(x, y)| x.sub(y))
                .collect::<Result<Vec<_>>>()?;
            for (slot, &r) in lipschitz.iter_mut().zip(&lip_r) {
                let denom = spectral_lp_norm(&diff_u, r)?;
                if denom > 0.0 {
                    slot[a] = slot[a].max(hs_lp_norm(&diff_s, r)? / denom);
                }
            }
        }
    }

    let growth: Vec<RatioStat> = growth
        .into_iter()
        .zip(growth_r)
        .map(|(v, r)| RatioStat::new(format!("growth_r{r}"), v))
        .collect();
    let lipschitz: Vec<RatioStat> = lipschitz
        .into_iter()
        .zip(lip_r)
        .map(|(v, r)| RatioStat::new(format!("lipschitz_r{r}"), v))
        .collect();
    let gradient = RatioStat::new("gradient_l2".into(), gradient);
    let pass = growth.iter().chain(&lipschitz).all(|s| s.bounded)
        && gradient.bounded
        && divergence < RESIDUAL_TOLERANCE
        && mean < RESIDUAL_TOLERANCE;
    Ok(AssumptionReport {
        model: model.name(),
        p,
        corpus_size: corpus.len(),
        hilbert_schmidt_mass: model.hilbert_schmidt_mass(),
        growth,
        lipschitz,
        gradient,
        divergence_residual: divergence,
        mean_residual: mean,
        pass,
    })
}
