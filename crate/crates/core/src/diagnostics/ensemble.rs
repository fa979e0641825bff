//! Monte-Carlo expectations over independent paths.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::SpectralField;
use crate::noise::NoiseModel;
use crate::solver::{simulate_path, InitialCondition, RecordOptions, SolverConfig, TrajectoryRecord};

use super::report::{SeriesPoint, VerificationReport, Verdict};
use super::stats::{Accumulator, EnsembleStats};

/// Path functional, evaluated on `[0, τ ∧ S]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Functional {
    /// `sup ‖u‖₂² + ∫ ‖∇u‖₂²`.
    L2Energy,
    /// `sup ‖u‖_p^p + ∫ Σ_j ∫ |∇(|u_j|^{p/2})|²`.
    LpEnergy,
    /// Indicator that the `L^p` energy reaches `level^p`.
    TailIndicator { level: f64 },
}

impl Functional {
    pub fn needs_gradient_energy(&self) -> bool {
        !matches!(self, Functional::L2Energy)
    }

    pub fn evaluate(&self, record: &TrajectoryRecord) -> f64 {
        match *self {
            Functional::L2Energy => record.l2_energy(),
            Functional::LpEnergy => record.lp_energy(),
            Functional::TailIndicator { level } => {
                (record.lp_energy() >= level.powf(record.p)) as u8 as f64
            }
        }
    }
}

/// Paths `0..paths` of `cfg.seed`, in path order.
pub fn ensemble_records(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    paths: usize,
    options: RecordOptions,
) -> Result<Vec<TrajectoryRecord>> {
    if paths == 0 {
        return Err(Error::Empty("ensemble needs at least one path"));
    }
    (0..paths as u64)
        .into_par_iter()
        .map(|path| simulate_path(cfg, noise, u0, path, options))
        .collect()
}

/// Mean, variance and standard error of `functional` over `paths` paths.
pub fn ensemble_expectation(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    paths: usize,
    functional: Functional,
) -> Result<EnsembleStats> {
    let options = RecordOptions {
        gradient_energy: functional.needs_gradient_energy(),
        keep_states: false,
    };
    let records = ensemble_records(cfg, noise, u0, paths, options)?;
    Ok(records.iter().map(|r| functional.evaluate(r)).collect::<Accumulator>().stats())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyAtN {
    pub n: usize,
    pub stats: EnsembleStats,
    /// `mean / (‖u0‖₂² + 1)`.
    pub constant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyUniformity {
    pub paths: usize,
    pub initial_energy: f64,
    pub per_n: Vec<EnergyAtN>,
    /// Largest over smallest mean.
    pub spread: f64,
    /// Twice the constant measured at the smallest `n`.
    pub fitted_constant: f64,
    pub within_factor_two: bool,
    pub below_fitted_bound: bool,
}

/// `E[sup ‖u‖₂² + ∫‖∇u‖₂²]` across truncations driven by the same seeds.
pub fn energy_uniformity_study(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    initial: &InitialCondition,
    truncations: &[usize],
    paths: usize,
) -> Result<EnergyUniformity> {
    let finest = *truncations.iter().max().ok_or(Error::Empty("truncation list"))?;
    let full = initial.build(cfg.with_truncation(finest).grid()?, finest)?;
    let initial_energy = full.l2_norm().powi(2);
    let mut per_n = Vec::new();
    for &n in truncations {
        let c = cfg.with_truncation(n);
        let u0 = initial.build(c.grid()?, n)?;
        let stats = ensemble_expectation(&c, noise, &u0, paths, Functional::L2Energy)?;
        per_n.push(EnergyAtN {
            n,
            stats,
            constant: stats.mean / (initial_energy + 1.0),
        });
    }
    let hi = per_n.iter().map(|e| e.stats.mean).fold(0.0, f64::max);
    let lo = per_n.iter().map(|e| e.stats.mean).fold(f64::INFINITY, f64::min);
    let fitted_constant = 2.0 * per_n[0].constant;
    let below = per_n
        .iter()
        .all(|e| e.stats.mean <= fitted_constant * (initial_energy + 1.0));
    Ok(EnergyUniformity {
        paths,
        initial_energy,
        spread: hi / lo,
        fitted_constant,
        within_factor_two: hi <= 2.0 * lo,
        below_fitted_bound: below,
        per_n,
    })
}

impl EnergyUniformity {
    pub fn series(&self) -> Vec<SeriesPoint> {
        self.per_n
            .iter()
            .map(|e| SeriesPoint { x: e.n as f64, y: e.stats.mean, yerr: e.stats.std_error })
            .collect()
    }

    pub fn report(&self) -> Result<VerificationReport> {
        let verdicts = vec![
            Verdict::new("energy_within_factor_two", self.within_factor_two, format!("spread {:.3}", self.spread)),
            Verdict::new(
                "energy_below_fitted_bound",
                self.below_fitted_bound,
                format!("C = {:.4}", self.fitted_constant),
            ),
        ];
        VerificationReport::new("energy_uniformity", &self.paths, self, verdicts)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailPoint {
    pub horizon: f64,
    pub probability: EnsembleStats,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailStudy {
    pub level: f64,
    pub paths: usize,
    /// Horizons in decreasing order.
    pub points: Vec<TailPoint>,
    /// Smallest stopping time over all paths.
    pub min_stop_time: f64,
    /// Fraction of paths with `τ >= dt`.
    pub positive_fraction: f64,
    pub monotone: bool,
}

/// Tail probability `P[L^p energy on [0, τ ∧ S] >= level^p]` for each `S`.
///
/// Paths are run once to the largest horizon and cut, so every `S` sees the
/// same Brownian paths.
pub fn tail_study(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    paths: usize,
    horizons: &[f64],
    level: f64,
) -> Result<TailStudy> {
    let mut hs = horizons.to_vec();
    hs.sort_by(|a, b| b.total_cmp(a));
    let top = *hs.first().ok_or(Error::Empty("horizon list"))?;
    let run = SolverConfig { horizon: top, ..cfg.clone() };
    let options = RecordOptions { gradient_energy: true, keep_states: false };
    let records = ensemble_records(&run, noise, u0, paths, options)?;
    let functional = Functional::TailIndicator { level };
    let points: Vec<TailPoint> = hs
        .iter()
        .map(|&h| TailPoint {
            horizon: h,
            probability: records
                .iter()
                .map(|r| functional.evaluate(&r.truncated(h)))
                .collect::<Accumulator>()
                .stats(),
        })
        .collect();
    let monotone = points.windows(2).all(|w| {
        let slack = w[0].probability.std_error.unwrap_or(0.0).max(w[1].probability.std_error.unwrap_or(0.0));
        w[1].probability.mean <= w[0].probability.mean + slack
    });
    let min_stop_time = records.iter().map(|r| r.stop_time).fold(f64::INFINITY, f64::min);
    let eps = 1e-9 * cfg.dt;
    let positive = records.iter().filter(|r| r.stop_time >= cfg.dt - eps).count();
    Ok(TailStudy {
        level,
        paths,
        points,
        min_stop_time,
        positive_fraction: positive as f64 / paths as f64,
        monotone,
    })
}

impl TailStudy {
    pub fn series(&self) -> Vec<SeriesPoint> {
        self.points
            .iter()
            .map(|p| SeriesPoint { x: p.horizon, y: p.probability.mean, yerr: p.probability.std_error })
            .collect()
    }

    pub fn report(&self) -> Result<VerificationReport> {
        let verdicts = vec![
            Verdict::new(
                "stopping_time_positive",
                self.positive_fraction == 1.0,
                format!("fraction {:.4}, min τ {:.3e}", self.positive_fraction, self.min_stop_time),
            ),
            Verdict::new("tail_monotone_in_horizon", self.monotone, format!("{:?}", self.series())),
        ];
        VerificationReport::new("stopping_tail", &self.level, self, verdicts)
    }
}
