use serde::Serialize;

use crate::error::Result;
use crate::fourier::{inverse_transform, lp_norm, SpectralField};
use crate::noise::{path_rng, BrownianPath, NoiseModel};
use crate::solver::{picard_solve, simulate_path_with, RecordOptions, Scheme, SolverConfig};

use super::report::{VerificationReport, Verdict};

/// Second solution compared against the Euler–Maruyama path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Comparison {
    /// Fixed point of the gated Picard iteration on the same increments.
    Picard { tol: f64, max_iters: usize },
    /// The same integrator run a second time.
    Rerun,
    /// Another time discretization on the same increments.
    Scheme { scheme: Scheme },
    /// The same integrator driven by another path's increments.
    OtherPath { path: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub comparison: Comparison,
    /// `sup_t ‖u(t) − v(t)‖_p` over the common interval.
    pub sup_lp_difference: f64,
    pub common_steps: usize,
    pub picard_iterations: Option<usize>,
}

/// Runs path `path` of `cfg.seed` and a second solution, returning the
/// largest `L^p` distance between them.
pub fn uniqueness_check(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    path: u64,
    comparison: Comparison,
) -> Result<UniquenessReport> {
    let bm = BrownianPath::generate(noise.basis(), cfg.dt, cfg.steps(), &mut path_rng(cfg.seed, path))?;
    let opts = RecordOptions { keep_states: true, ..Default::default() };
    let em = simulate_path_with(cfg, noise, u0, &bm, opts)?;
    let (other, iterations) = match comparison {
        Comparison::Picard { tol, max_iters } => {
            let sol = picard_solve(cfg, noise, u0, &bm, tol, max_iters)?;
            (sol.states, Some(sol.iterations))
        }
        Comparison::Rerun => (simulate_path_with(cfg, noise, u0, &bm, opts)?.states, None),
        Comparison::Scheme { scheme } => {
            let c = SolverConfig { scheme, ..cfg.clone() };
            (simulate_path_with(&c, noise, u0, &bm, opts)?.states, None)
        }
        Comparison::OtherPath { path: q } => {
            let bm2 = BrownianPath::generate(noise.basis(), cfg.dt, cfg.steps(), &mut path_rng(cfg.seed, q))?;
            (simulate_path_with(cfg, noise, u0, &bm2, opts)?.states, None)
        }
    };
    let common = em.states.len().min(other.len());
    let mut sup = 0.0f64;
    for (a, b) in em.states[..common].iter().zip(&other[..common]) {
        sup = sup.max(lp_norm(&inverse_transform(&a.sub(b)?), cfg.p)?);
    }
    Ok(UniquenessReport {
        comparison,
        sup_lp_difference: sup,
        common_steps: common.saturating_sub(1),
        picard_iterations: iterations,
    })
}

/// Verdicts: Picard within `10·dt`, rerun exactly zero.
pub fn uniqueness_verification(picard: &UniquenessReport, rerun: &UniquenessReport, dt: f64) -> Result<VerificationReport> {
    let verdicts = vec![
        Verdict::new(
            "picard_matches_path",
            picard.sup_lp_difference < 10.0 * dt,
            format!("sup difference {:.3e}", picard.sup_lp_difference),
        ),
        Verdict::new(
            "rerun_identical",
            rerun.sup_lp_difference == 0.0,
            format!("sup difference {:.3e}", rerun.sup_lp_difference),
        ),
    ];
    VerificationReport::new("pathwise_uniqueness", &dt, &(picard, rerun), verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseBasis;
    use crate::solver::InitialCondition;

    fn setup() -> (SolverConfig, NoiseModel, SpectralField) {
        let cfg = SolverConfig { horizon: 0.01, seed: 3, ..SolverConfig::new(2, 4) };
        let noise = NoiseModel::additive(NoiseBasis::new(2, 6).unwrap(), 1.0, 1.0).unwrap();
        let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(cfg.grid().unwrap(), 4).unwrap();
        (cfg, noise, u0)
    }

    #[test]
    fn rerun_is_exact() {
        let (cfg, noise, u0) = setup();
        let r = uniqueness_check(&cfg, &noise, &u0, 0, Comparison::Rerun).unwrap();
        assert_eq!(r.sup_lp_difference, 0.0);
        assert_eq!(r.common_steps, 10);
    }

    #[test]
    fn picard_close_and_other_path_far() {
        let (cfg, noise, u0) = setup();
        let pic = uniqueness_check(&cfg, &noise, &u0, 0, Comparison::Picard { tol: 1e-12, max_iters: 20 }).unwrap();
        assert!(pic.sup_lp_difference < 10.0 * cfg.dt);
        let other = uniqueness_check(&cfg, &noise, &u0, 0, Comparison::OtherPath { path: 1 }).unwrap();
        assert!(other.sup_lp_difference > 100.0 * pic.sup_lp_difference.max(1e-12));
        let scheme = uniqueness_check(&cfg, &noise, &u0, 0, Comparison::Scheme { scheme: Scheme::SemiImplicitEm }).unwrap();
        assert!(scheme.sup_lp_difference > 0.0 && scheme.sup_lp_difference < 0.1);
    }
}
