//! Differences between truncation levels driven by one Brownian path.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{inverse_transform, lp_norm_pow};
use crate::noise::{path_rng, BrownianPath, NoiseModel};
use crate::solver::{simulate_path_with, InitialCondition, RecordOptions, SolverConfig, TrajectoryRecord};

use super::report::{SeriesPoint, VerificationReport, Verdict};
use super::stats::{log_log_slope, Accumulator, EnsembleStats};

/// `sup ‖u^{(n)} − u^{(m)}‖_p^p + ∫ ‖u^{(n)} − u^{(m)}‖_{3p}^p` over the
/// common interval of two records, plus its two parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairDifference {
    pub sup_lp: f64,
    pub integral_3p: f64,
}

impl PairDifference {
    pub fn total(&self) -> f64 {
        self.sup_lp + self.integral_3p
    }
}

/// Compares two records with kept states on the finer of their grids, up to
/// the earlier stopping time. The integral uses the left-endpoint rule.
pub fn pair_difference(a: &TrajectoryRecord, b: &TrajectoryRecord) -> Result<PairDifference> {
    if a.states.is_empty() || b.states.is_empty() {
        return Err(Error::Empty("records must keep their states"));
    }
    let (fine, coarse) = if a.states[0].grid().points() >= b.states[0].grid().points() {
        (a, b)
    } else {
        (b, a)
    };
    let grid = fine.states[0].grid();
    let p = fine.p;
    let common = fine.states.len().min(coarse.states.len());
    let mut sup_lp = 0.0f64;
    let mut integral_3p = 0.0;
    for i in 0..common {
        let diff = fine.states[i].sub(&coarse.states[i].resample(grid)?)?;
        let phys = inverse_transform(&diff);
        sup_lp = sup_lp.max(lp_norm_pow(&phys, p)?);
        if i + 1 < common {
            integral_3p += fine.dt * lp_norm_pow(&phys, 3.0 * p)?.powf(1.0 / 3.0);
        }
    }
    Ok(PairDifference { sup_lp, integral_3p })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergencePair {
    pub m: usize,
    pub n: usize,
    pub quantity: EnsembleStats,
    pub sup_lp_mean: f64,
    pub integral_3p_mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyReport {
    pub noise: String,
    pub paths: usize,
    pub truncations: Vec<usize>,
    pub pairs: Vec<ConvergencePair>,
    /// Negative log-log slope of the pair means against `m`.
    pub slope: f64,
}

/// Monte-Carlo estimates of the pair differences for consecutive entries of
/// `truncations`. Every level of one path uses the same increments; each
/// level runs on its own minimal grid.
pub fn cauchy_study(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    initial: &InitialCondition,
    truncations: &[usize],
    paths: usize,
) -> Result<CauchyReport> {
    if truncations.len() < 2 {
        return Err(Error::Empty("Cauchy study needs at least two truncations"));
    }
    if paths == 0 {
        return Err(Error::Empty("Cauchy study needs at least one path"));
    }
    let options = RecordOptions { gradient_energy: false, keep_states: true };
    let per_path: Vec<Vec<PairDifference>> = (0..paths as u64)
        .into_par_iter()
        .map(|path| {
            let bm = BrownianPath::generate(noise.basis(), cfg.dt, cfg.steps(), &mut path_rng(cfg.seed, path))?;
            let mut prev: Option<TrajectoryRecord> = None;
            let mut out = Vec::new();
            for &n in truncations {
                let c = cfg.with_truncation(n);
                let u0 = initial.build(c.grid()?, n)?;
                let rec = simulate_path_with(&c, noise, &u0, &bm, options)?;
                if let Some(p) = &prev {
                    out.push(pair_difference(p, &rec)?);
                }
                prev = Some(rec);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<ConvergencePair> = truncations
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let q: Accumulator = per_path.iter().map(|d| d[i].total()).collect();
            let s: Accumulator = per_path.iter().map(|d| d[i].sup_lp).collect();
            let g: Accumulator = per_path.iter().map(|d| d[i].integral_3p).collect();
            ConvergencePair {
                m: w[0],
                n: w[1],
                quantity: q.stats(),
                sup_lp_mean: s.stats().mean,
                integral_3p_mean: g.stats().mean,
            }
        })
        .collect();
    let ms: Vec<f64> = pairs.iter().map(|p| p.m as f64).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.quantity.mean).collect();
    let slope = if pairs.len() >= 2 && ys.iter().all(|&y| y > 0.0) {
        -log_log_slope(&ms, &ys)
    } else {
        f64::NAN
    };
    Ok(CauchyReport {
        noise: noise.name(),
        paths,
        truncations: truncations.to_vec(),
        pairs,
        slope,
    })
}

impl CauchyReport {
    pub fn series(&self) -> Vec<SeriesPoint> {
        self.pairs
            .iter()
            .map(|p| SeriesPoint { x: p.m as f64, y: p.quantity.mean, yerr: p.quantity.std_error })
            .collect()
    }

    /// Each pair exceeds the next by at least one standard error.
    pub fn decreasing_beyond_error(&self) -> bool {
        self.pairs.windows(2).all(|w| {
            let se = w[0].quantity.std_error.unwrap_or(0.0).max(w[1].quantity.std_error.unwrap_or(0.0));
            w[0].quantity.mean - w[1].quantity.mean >= se
        })
    }
}

/// Verdicts for a stochastic study and its zero-noise analogue.
pub fn cauchy_verification(stochastic: &CauchyReport, deterministic: &CauchyReport, min_slope: f64) -> Result<VerificationReport> {
    let verdicts = vec![
        Verdict::new(
            "cauchy_decreasing",
            stochastic.decreasing_beyond_error(),
            format!("{:?}", stochastic.series()),
        ),
        Verdict::new(
            "deterministic_slope",
            deterministic.slope >= min_slope,
            format!("slope {:.3}", deterministic.slope),
        ),
    ];
    VerificationReport::new("cauchy", &min_slope, &(stochastic, deterministic), verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseBasis;
    use crate::solver::simulate_path;

    #[test]
    fn equal_levels_give_zero() {
        let c = SolverConfig { horizon: 0.01, ..SolverConfig::new(2, 4) };
        let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(c.grid().unwrap(), 4).unwrap();
        let noise = NoiseModel::additive(NoiseBasis::new(2, 4).unwrap(), 1.0, 1.0).unwrap();
        let opts = RecordOptions { keep_states: true, ..Default::default() };
        let a = simulate_path(&c, &noise, &u0, 0, opts).unwrap();
        let d = pair_difference(&a, &a).unwrap();
        assert_eq!(d.total(), 0.0);
    }

    #[test]
    fn symmetric_in_arguments() {
        let c = SolverConfig { horizon: 0.01, ..SolverConfig::new(2, 2) };
        let ic = InitialCondition::RandomSpectrum { seed: 1, amplitude: 1.0, kmax: 8, decay: 2.0 };
        let noise = NoiseModel::linear(NoiseBasis::new(2, 4).unwrap(), 1.0, 1.0, true).unwrap();
        let opts = RecordOptions { keep_states: true, ..Default::default() };
        let bm = BrownianPath::generate(noise.basis(), c.dt, c.steps(), &mut path_rng(0, 0)).unwrap();
        let c4 = c.with_truncation(4);
        let a = simulate_path_with(&c, &noise, &ic.build(c.grid().unwrap(), 2).unwrap(), &bm, opts).unwrap();
        let b = simulate_path_with(&c4, &noise, &ic.build(c4.grid().unwrap(), 4).unwrap(), &bm, opts).unwrap();
        assert_eq!(pair_difference(&a, &b).unwrap(), pair_difference(&b, &a).unwrap());
        assert!(pair_difference(&a, &b).unwrap().total() > 0.0);
    }

    #[test]
    fn deterministic_refinement_converges() {
        let c = SolverConfig { horizon: 0.02, ..SolverConfig::new(2, 2) };
        let ic = InitialCondition::RandomSpectrum { seed: 4, amplitude: 1.0, kmax: 24, decay: 2.0 };
        let noise = NoiseModel::zero(NoiseBasis::new(2, 1).unwrap());
        let r = cauchy_study(&c, &noise, &ic, &[2, 4, 8], 1).unwrap();
        assert!(r.pairs[0].quantity.mean > r.pairs[1].quantity.mean);
        assert!(r.slope >= 1.0, "{r:?}");
    }
}
