//! Checks of the time discretization: exact discrete Ornstein–Uhlenbeck
//! statistics and the strong convergence order.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::SpectralField;
use crate::noise::{path_rng, BrownianPath, NoiseKind, NoiseModel};
use crate::solver::{simulate_path_with, RecordOptions, Scheme, SolverConfig, SolverState, Stepper};

use super::report::{SeriesPoint, VerificationReport, Verdict};
use super::stats::log_log_slope;

/// Stationary second moment of one real coefficient of the linear problem.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OuMode {
    pub wavevector: [i64; 3],
    pub component: usize,
    /// `"re"` or `"im"`.
    pub part: &'static str,
    pub theoretical: f64,
    pub sample: f64,
    pub std_error: f64,
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OuCheck {
    pub steps: usize,
    pub burn_in: usize,
    pub modes: Vec<OuMode>,
    pub max_abs_z: f64,
    pub pass: bool,
}

/// Runs the linear (Stokes) problem with additive noise for `steps` steps
/// after a burn-in and compares each forced coefficient's second moment with
/// the stationary value of its AR(1) recursion `X⁺ = ρ(X + ξ)`:
/// `ρ²s²/(1 − ρ²)`, where `s²` is the per-step forcing variance.
///
/// The standard error accounts for the lag correlation `ρ²` of `X²`.
pub fn ou_check(cfg: &SolverConfig, noise: &NoiseModel, steps: usize, z_limit: f64) -> Result<OuCheck> {
    let coeffs = match noise.kind() {
        NoiseKind::Additive { coeffs } => coeffs.clone(),
        _ => return Err(Error::Config("the OU check needs additive noise".into())),
    };
    let cfg = SolverConfig { nonlinear: false, ..cfg.clone() };
    let stepper = Stepper::new(&cfg, noise.clone())?;
    let grid = stepper.grid();
    let d = cfg.dim;
    let lambda_dt = |k: &[i64; 3]| 4.0 * PI * PI * cfg.dt * k.iter().map(|&x| (x * x) as f64).sum::<f64>();
    let rho = |k: &[i64; 3]| match cfg.scheme {
        Scheme::ExponentialEm => (-lambda_dt(k)).exp(),
        Scheme::SemiImplicitEm => 1.0 / (1.0 + lambda_dt(k)),
    };

    // forced coefficients: basis wavevectors, each component, real and imaginary parts
    let shapes: Vec<SpectralField> = (0..coeffs.len()).map(|m| noise.basis().solenoidal_shape(m, grid)).collect();
    let mut wavevectors: Vec<[i64; 3]> = noise.basis().modes().iter().map(|m| m.wavevector).collect();
    wavevectors.dedup();
    struct Target {
        k: [i64; 3],
        comp: usize,
        re: bool,
        idx: usize,
        theory: f64,
        rho: f64,
    }
    let mut targets = Vec::new();
    for k in &wavevectors {
        if !stepper.truncation().contains(k) {
            continue;
        }
        let idx = grid.flat_index(&k[..d]).ok_or_else(|| Error::Config("noise mode off the grid".into()))?;
        let r = rho(k);
        for comp in 0..d {
            for re in [true, false] {
                let s2: f64 = coeffs
                    .iter()
                    .zip(&shapes)
                    .map(|(&c, g)| {
                        let z = g.component(comp)[idx];
                        let v = if re { z.re } else { z.im };
                        c * c * v * v
                    })
                    .sum::<f64>()
                    * cfg.dt;
                if s2 > 0.0 {
                    targets.push(Target { k: *k, comp, re, idx, theory: r * r * s2 / (1.0 - r * r), rho: r });
                }
            }
        }
    }
    if targets.is_empty() {
        return Err(Error::Empty("no forced coefficients"));
    }
    let slowest = targets.iter().map(|t| t.rho).fold(0.0, f64::max);
    let burn_in = (10.0 / (1.0 - slowest)).ceil() as usize;

    let mut rng = path_rng(cfg.seed, 0);
    let bm = BrownianPath::generate(noise.basis(), cfg.dt, burn_in + steps, &mut rng)?;
    let mut state = SolverState { t: 0.0, u: SpectralField::zeros(grid, d) };
    let mut sums = vec![0.0f64; targets.len()];
    for (i, dw) in bm.increments().iter().enumerate() {
        state = stepper.step(&state, dw)?;
        if i >= burn_in {
            for (s, t) in sums.iter_mut().zip(&targets) {
                let z = state.u.component(t.comp)[t.idx];
                let v = if t.re { z.re } else { z.im };
                *s += v * v;
            }
        }
    }
    let modes: Vec<OuMode> = targets
        .iter()
        .zip(&sums)
        .map(|(t, &s)| {
            let sample = s / steps as f64;
            let r2 = t.rho * t.rho;
            let std_error = (2.0 * t.theory * t.theory / steps as f64 * (1.0 + r2) / (1.0 - r2)).sqrt();
            OuMode {
                wavevector: t.k,
                component: t.comp,
                part: if t.re { "re" } else { "im" },
                theoretical: t.theory,
                sample,
                std_error,
                z: (sample - t.theory) / std_error,
            }
        })
        .collect();
    let max_abs_z = modes.iter().map(|m| m.z.abs()).fold(0.0, f64::max);
    Ok(OuCheck {
        steps,
        burn_in,
        modes,
        max_abs_z,
        pass: max_abs_z <= z_limit,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrongOrderStudy {
    pub reference_dt: f64,
    pub dts: Vec<f64>,
    /// RMS over paths of `‖u_dt(S) − u_ref(S)‖₂`.
    pub errors: Vec<f64>,
    pub paths: usize,
    pub order: f64,
}

impl StrongOrderStudy {
    pub fn series(&self) -> Vec<SeriesPoint> {
        self.dts
            .iter()
            .zip(&self.errors)
            .map(|(&x, &y)| SeriesPoint { x, y, yerr: None })
            .collect()
    }
}

/// Errors at the horizon of runs with steps `cfg.dt · factor` against a
/// reference run at `cfg.dt`, all on one Brownian path per sample.
pub fn strong_order_study(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    factors: &[usize],
    paths: usize,
) -> Result<StrongOrderStudy> {
    if factors.len() < 2 || paths == 0 {
        return Err(Error::Empty("strong order study needs two step sizes and a path"));
    }
    let steps = cfg.steps();
    if factors.iter().any(|&f| f == 0 || steps % f != 0) {
        return Err(Error::Config("step factors must divide the reference step count".into()));
    }
    let opts = RecordOptions { keep_states: true, ..Default::default() };
    let sq: Vec<Vec<f64>> = (0..paths as u64)
        .into_par_iter()
        .map(|path| {
            let bm = BrownianPath::generate(noise.basis(), cfg.dt, steps, &mut path_rng(cfg.seed, path))?;
            let reference = simulate_path_with(cfg, noise, u0, &bm, opts)?;
            let end = reference.states.last().expect("initial state kept");
            factors
                .iter()
                .map(|&f| {
                    let c = SolverConfig { dt: cfg.dt * f as f64, ..cfg.clone() };
                    let coarse = simulate_path_with(&c, noise, u0, &bm.coarsen(f)?, opts)?;
                    let last = coarse.states.last().expect("initial state kept");
                    Ok(last.sub(end)?.l2_norm().powi(2))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let errors: Vec<f64> = (0..factors.len())
        .map(|j| (sq.iter().map(|v| v[j]).sum::<f64>() / paths as f64).sqrt())
        .collect();
    let dts: Vec<f64> = factors.iter().map(|&f| cfg.dt * f as f64).collect();
    Ok(StrongOrderStudy {
        reference_dt: cfg.dt,
        order: log_log_slope(&dts, &errors),
        dts,
        errors,
        paths,
    })
}

pub fn scheme_verification(ou: &OuCheck, order: &StrongOrderStudy, min_order: f64) -> Result<VerificationReport> {
    let verdicts = vec![
        Verdict::new("ou_stationary_variance", ou.pass, format!("max |z| {:.3}", ou.max_abs_z)),
        Verdict::new("strong_order", order.order >= min_order, format!("order {:.3}", order.order)),
    ];
    VerificationReport::new("scheme_validation", &min_order, &(ou, order), verdicts)
}
