use serde::Serialize;

use super::config::SolverConfig;
use super::gate::TruncationGate;
use super::path::project_initial;
use super::step::{Gates, SolverState, Stepper};
use crate::error::{Error, Result};
use crate::fourier::{inverse_transform, PhysicalField, SpectralField};
use crate::noise::{BrownianPath, NoiseModel};

/// Fixed point of the gated Picard iteration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PicardSolution {
    pub iterations: usize,
    /// `sup_t ‖u^{(k)} − u^{(k−1)}‖₂` per iteration.
    pub differences: Vec<f64>,
    #[serde(skip)]
    pub states: Vec<SpectralField>,
}

/// Gated Picard iteration on `[0, horizon]`.
///
/// `u^{(0)}` is the heat flow of `S_n u0`. Iterate `k` is marched with the
/// scheme of `cfg`: drift at `u^{(k)}` gated by `φ^M(‖u^{(k)}‖₂)²`, noise at
/// `u^{(k−1)}` gated by `φ^M(‖u^{(k−1)}‖₂)²`, all iterates driven by `bm`.
/// Stops once `sup_t ‖u^{(k)} − u^{(k−1)}‖₂ < tol`.
pub fn picard_solve(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    bm: &BrownianPath,
    tol: f64,
    max_iters: usize,
) -> Result<PicardSolution> {
    let stepper = Stepper::new(cfg, noise.clone())?;
    let steps = cfg.steps();
    if bm.len() < steps {
        return Err(Error::Config(format!(
            "Brownian path has {} increments, {} steps requested",
            bm.len(),
            steps
        )));
    }
    let gate = TruncationGate::new(cfg.cutoff_m);
    let start = project_initial(u0, cfg)?;

    let mut prev = Vec::with_capacity(steps + 1);
    prev.push(start.clone());
    for i in 0..steps {
        let next = stepper.heat_step(&prev[i]);
        prev.push(next);
    }
    let mut prev_phys: Vec<PhysicalField> = prev.iter().map(inverse_transform).collect();

    let mut differences = Vec::new();
    for k in 1..=max_iters {
        let mut cur = Vec::with_capacity(steps + 1);
        let mut cur_phys = Vec::with_capacity(steps + 1);
        cur.push(start.clone());
        cur_phys.push(prev_phys[0].clone());
        for i in 0..steps {
            let state = SolverState {
                t: i as f64 * cfg.dt,
                u: cur[i].clone(),
            };
            let gates = Gates {
                drift: gate.eval(cur[i].l2_norm()).powi(2),
                noise: gate.eval(prev[i].l2_norm()).powi(2),
            };
            let next = stepper.step_gated(
                &state,
                &cur_phys[i],
                Some((&prev[i], &prev_phys[i])),
                gates,
                &bm.increments()[i],
            )?;
            cur_phys.push(inverse_transform(&next.u));
            cur.push(next.u);
        }
        let diff = cur
            .iter()
            .zip(&prev)
            .map(|(a, b)| a.sub(b).map(|d| d.l2_norm()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        differences.push(diff);
        prev = cur;
        prev_phys = cur_phys;
        if diff < tol {
            return Ok(PicardSolution {
                iterations: k,
                differences,
                states: prev,
            });
        }
        if !diff.is_finite() {
            break;
        }
    }
    Err(Error::NonContraction {
        iterations: differences.len(),
        last_difference: differences.last().copied().unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{path_rng, NoiseBasis};
    use crate::solver::initial::InitialCondition;
    use crate::solver::path::{simulate_path_with, RecordOptions};

    fn setup(horizon: f64) -> (SolverConfig, NoiseBasis) {
        let cfg = SolverConfig {
            horizon,
            dt: 1e-3,
            ..SolverConfig::new(2, 4)
        };
        (cfg, NoiseBasis::new(2, 6).unwrap())
    }

    #[test]
    fn zero_stays_zero() {
        let (cfg, basis) = setup(0.01);
        let u0 = SpectralField::zeros(cfg.grid().unwrap(), 2);
        let bm = BrownianPath::generate(&basis, cfg.dt, cfg.steps(), &mut path_rng(0, 0)).unwrap();
        let sol = picard_solve(&cfg, &NoiseModel::zero(basis), &u0, &bm, 1e-12, 5).unwrap();
        assert_eq!(sol.iterations, 1);
        assert!(sol.states.iter().all(|s| s.max_abs() == 0.0));
    }

    #[test]
    fn fixed_point_matches_path() {
        let (cfg, basis) = setup(0.02);
        let u0 = InitialCondition::TaylorGreen { amplitude: 2.0 }.build(cfg.grid().unwrap(), cfg.n).unwrap();
        let noise = NoiseModel::linear(basis.clone(), 1.0, 1.0, true).unwrap();
        let bm = BrownianPath::generate(&basis, cfg.dt, cfg.steps(), &mut path_rng(5, 0)).unwrap();
        let sol = picard_solve(&cfg, &noise, &u0, &bm, 1e-12, 50).unwrap();
        let rec = simulate_path_with(&cfg, &noise, &u0, &bm, RecordOptions { keep_states: true, ..Default::default() }).unwrap();
        for (a, b) in sol.states.iter().zip(&rec.states) {
            assert!(a.sub(b).unwrap().l2_norm() < 1e-10);
        }
        assert!(sol.differences.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn low_level_reduces_to_heat_flow() {
        let (mut cfg, basis) = setup(0.01);
        let u0 = InitialCondition::TaylorGreen { amplitude: 2.0 }.build(cfg.grid().unwrap(), cfg.n).unwrap();
        cfg.cutoff_m = 0.5 * u0.l2_norm();
        let noise = NoiseModel::additive(basis.clone(), 1.0, 1.0).unwrap();
        let bm = BrownianPath::generate(&basis, cfg.dt, cfg.steps(), &mut path_rng(1, 0)).unwrap();
        let sol = picard_solve(&cfg, &noise, &u0, &bm, 1e-14, 5).unwrap();
        let stepper = Stepper::new(&cfg, noise).unwrap();
        let mut heat = u0.clone();
        for s in &sol.states[1..] {
            heat = stepper.heat_step(&heat);
            assert!(s.max_abs_diff(&heat).unwrap() < 1e-15);
        }
    }

    #[test]
    fn reports_non_contraction() {
        let (cfg, basis) = setup(0.01);
        let u0 = InitialCondition::TaylorGreen { amplitude: 2.0 }.build(cfg.grid().unwrap(), cfg.n).unwrap();
        let noise = NoiseModel::linear(basis.clone(), 5.0, 1.0, false).unwrap();
        let bm = BrownianPath::generate(&basis, cfg.dt, cfg.steps(), &mut path_rng(1, 0)).unwrap();
        assert!(matches!(
            picard_solve(&cfg, &noise, &u0, &bm, 0.0, 2),
            Err(Error::NonContraction { iterations: 2, .. })
        ));
    }
}
