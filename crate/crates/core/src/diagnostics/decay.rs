//! Rectangular partial sums: decay of `(T_n − T_m)f` against `∇f` and
//! uniform `L^q` boundedness of `T_n`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::random::{random_band_limited, random_power_law};
use crate::fourier::{
    forward_transform, gradient, inverse_transform, lp_norm, rect_truncate, spectral_lp_norm, Grid,
    MultiIndex, PhysicalField, SpectralField,
};
use crate::noise::path_rng;

use super::report::{SeriesPoint, VerificationReport, Verdict};
use super::stats::log_log_slope;

/// Allowed shortfall of the measured exponent below the predicted one.
pub const ALPHA_SLACK: f64 = 0.1;
/// Allowed relative spread of the per-`n` maxima in the boundedness study.
pub const UNIFORM_VARIATION: f64 = 0.2;

/// Decay exponent guaranteed by interpolating between `q = 2` and an
/// auxiliary exponent `r`: `α = (1/r − 1/q)/(1/r − 1/2)` with `r = (1+q)/2`
/// below 2 and `r = 2q` above; `α(2) = 1`.
pub fn predicted_alpha(q: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::InvalidExponent(q));
    }
    if q == 2.0 {
        return Ok(1.0);
    }
    let r = if q < 2.0 { 0.5 * (1.0 + q) } else { 2.0 * q };
    Ok((1.0 / r - 1.0 / q) / (1.0 / r - 0.5))
}

/// Random-phase scalar fields with `|f̂(k)| ∝ |k|^{-(d/q + 1 + eps)}` on the
/// whole grid, barely in `W^{1,q}`.
pub fn decay_corpus(grid: Grid, q: f64, eps: f64, count: usize, seed: u64) -> Vec<SpectralField> {
    let decay = grid.dim() as f64 / q + 1.0 + eps;
    let kmax = grid.points() / 2 - 1;
    let mut rng = path_rng(seed, 200 + grid.dim() as u64);
    (0..count)
        .map(|_| random_power_law(grid, 1, kmax, decay, &mut rng))
        .collect()
}

/// Mixed corpus for the boundedness study, cycling through four families:
/// rough power-law spectra, low-band polynomials (degree 3), indicators of
/// random boxes and near-Dirichlet profiles `sgn(D_m)|D_m|^{1/3}`.
///
/// The last family is the `L^4` dual of the Dirichlet kernel, close to
/// extremal for `T_m`. It varies along one random axis, with shifted
/// kernels of orders on a √2-geometric grid up to `N/4`.
pub fn uniform_corpus(grid: Grid, count: usize, seed: u64) -> Vec<SpectralField> {
    let d = grid.dim();
    let kmax = grid.points() / 2 - 1;
    let mut rng = path_rng(seed, 300 + d as u64);
    let orders: Vec<usize> = (0..)
        .map(|j| (2.0 * std::f64::consts::SQRT_2.powi(j)).round() as usize)
        .take_while(|&m| m <= grid.points() / 4)
        .collect();
    (0..count)
        .map(|i| match i % 4 {
            0 => random_power_law(grid, 1, kmax, 0.5 * d as f64 + 0.1, &mut rng),
            1 => random_band_limited(grid, 1, &MultiIndex::cube(d, 3), &mut rng),
            2 => {
                let lo: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..1.0)).collect();
                let len: Vec<f64> = (0..d).map(|_| rng.random_range(0.05..0.6)).collect();
                sample_scalar(grid, |x| {
                    let inside = (0..d).all(|a| (x[a] - lo[a]).rem_euclid(1.0) < len[a]);
                    inside as u8 as f64
                })
            }
            _ => {
                let m = orders[(i / 4) % orders.len()];
                let axis = rng.random_range(0..d);
                let shift = rng.random_range(0.0..1.0);
                sample_scalar(grid, |x| {
                    let g = dirichlet_kernel(m, x[axis] - shift);
                    g.signum() * g.abs().cbrt()
                })
            }
        })
        .collect()
}

/// `D_m(t) = Σ_{|j|≤m} e^{2πijt}`.
fn dirichlet_kernel(m: usize, t: f64) -> f64 {
    1.0 + 2.0 * (1..=m).map(|j| (2.0 * std::f64::consts::PI * j as f64 * t).cos()).sum::<f64>()
}

fn sample_scalar(grid: Grid, f: impl Fn(&[f64; 3]) -> f64) -> SpectralField {
    let phys = PhysicalField::sample(grid, 1, |x, v| v[0] = f(x));
    forward_transform(&phys)
}

/// Corpus supremum of `‖(T_n − T_m)f‖_q / ‖∇f‖_q` for one ladder pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayPair {
    pub m: usize,
    pub n: usize,
    pub sup_ratio: f64,
    /// `sup_ratio · m^{α(q)}`, bounded if the predicted rate holds.
    pub scaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayStudy {
    pub q: f64,
    pub dim: usize,
    pub ladder: Vec<usize>,
    pub corpus_size: usize,
    pub pairs: Vec<DecayPair>,
    pub predicted_alpha: f64,
    /// Negative log-log slope of the suprema against `m`.
    pub measured_alpha: f64,
    pub pass: bool,
}

impl DecayStudy {
    pub fn series(&self) -> Vec<SeriesPoint> {
        self.pairs
            .iter()
            .map(|p| SeriesPoint { x: p.m as f64, y: p.sup_ratio, yerr: None })
            .collect()
    }
}

/// Measures the decay of consecutive-pair differences along `ladder` (cubic
/// truncations) over a mean-zero corpus.
pub fn operator_decay_study(q: f64, ladder: &[usize], corpus: &[SpectralField]) -> Result<DecayStudy> {
    let first = corpus.first().ok_or(Error::Empty("decay corpus"))?;
    if ladder.len() < 2 {
        return Err(Error::Empty("decay ladder needs at least two truncations"));
    }
    let predicted = predicted_alpha(q)?;
    let dim = first.grid().dim();
    let mut sup = vec![0.0f64; ladder.len() - 1];
    for f in corpus {
        f.require_mean_zero()?;
        let grad = lp_norm(&inverse_transform(&gradient(f)?), q)?;
        if grad == 0.0 {
            return Err(Error::ZeroField);
        }
        let mut prev = rect_truncate(f, &MultiIndex::cube(dim, ladder[0]))?;
        for (i, &n) in ladder[1..].iter().enumerate() {
            let cur = rect_truncate(f, &MultiIndex::cube(dim, n))?;
            let diff = spectral_lp_norm(&cur.sub(&prev)?, q)?;
            sup[i] = sup[i].max(diff / grad);
            prev = cur;
        }
    }
    let ms: Vec<f64> = ladder[..ladder.len() - 1].iter().map(|&m| m as f64).collect();
    let measured = -log_log_slope(&ms, &sup);
    let pairs = ladder
        .windows(2)
        .zip(&sup)
        .map(|(w, &s)| DecayPair {
            m: w[0],
            n: w[1],
            sup_ratio: s,
            scaled: s * (w[0] as f64).powf(predicted),
        })
        .collect();
    Ok(DecayStudy {
        q,
        dim,
        ladder: ladder.to_vec(),
        corpus_size: corpus.len(),
        pairs,
        predicted_alpha: predicted,
        measured_alpha: measured,
        pass: measured >= predicted - ALPHA_SLACK,
    })
}

pub fn decay_report(studies: &[DecayStudy]) -> Result<VerificationReport> {
    let verdicts = studies
        .iter()
        .map(|s| {
            Verdict::new(
                format!("decay_q{}_d{}", s.q, s.dim),
                s.pass,
                format!("measured {:.3} vs predicted {:.3}", s.measured_alpha, s.predicted_alpha),
            )
        })
        .collect();
    VerificationReport::new("partial_sum_decay", &ALPHA_SLACK, &studies, verdicts)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformBoundStudy {
    pub q: f64,
    pub dim: usize,
    pub ladder: Vec<usize>,
    pub corpus_size: usize,
    /// Corpus maximum of `‖T_n f‖_q / ‖f‖_q` per ladder entry.
    pub max_ratio: Vec<f64>,
    /// `(max − min)/min` of the per-`n` maxima.
    pub variation: f64,
    pub pass: bool,
}

impl UniformBoundStudy {
    pub fn series(&self) -> Vec<SeriesPoint> {
        self.ladder
            .iter()
            .zip(&self.max_ratio)
            .map(|(&n, &r)| SeriesPoint { x: n as f64, y: r, yerr: None })
            .collect()
    }
}

/// Measures `sup_f ‖T_n f‖_q / ‖f‖_q` along `ladder`.
///
/// At `q = 2` the verdict is `ratio <= 1 + 1e-12` (orthogonal projection);
/// otherwise the per-`n` maxima must vary by less than [`UNIFORM_VARIATION`].
pub fn uniform_bound_study(q: f64, ladder: &[usize], corpus: &[SpectralField]) -> Result<UniformBoundStudy> {
    let first = corpus.first().ok_or(Error::Empty("boundedness corpus"))?;
    if ladder.is_empty() {
        return Err(Error::Empty("boundedness ladder"));
    }
    let dim = first.grid().dim();
    let mut max_ratio = vec![0.0f64; ladder.len()];
    for f in corpus {
        let norm = spectral_lp_norm(f, q)?;
        if norm == 0.0 {
            return Err(Error::ZeroField);
        }
        for (slot, &n) in max_ratio.iter_mut().zip(ladder) {
            let t = rect_truncate(f, &MultiIndex::cube(dim, n))?;
            *slot = slot.max(spectral_lp_norm(&t, q)? / norm);
        }
    }
    let lo = max_ratio.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = max_ratio.iter().copied().fold(0.0, f64::max);
    let variation = (hi - lo) / lo;
    let pass = if q == 2.0 {
        hi <= 1.0 + 1e-12
    } else {
        variation < UNIFORM_VARIATION
    };
    Ok(UniformBoundStudy {
        q,
        dim,
        ladder: ladder.to_vec(),
        corpus_size: corpus.len(),
        max_ratio,
        variation,
        pass,
    })
}

pub fn uniform_report(studies: &[UniformBoundStudy]) -> Result<VerificationReport> {
    let verdicts = studies
        .iter()
        .map(|s| {
            Verdict::new(
                format!("uniform_q{}_d{}", s.q, s.dim),
                s.pass,
                format!(
                    "max ratio {:.6} variation {:.4}",
                    s.max_ratio.iter().copied().fold(0.0, f64::max),
                    s.variation
                ),
            )
        })
        .collect();
    VerificationReport::new("partial_sum_boundedness", &UNIFORM_VARIATION, &studies, verdicts)
}
