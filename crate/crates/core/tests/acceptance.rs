//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and asserts it.
//!
//! Run with `cargo test --test acceptance -- --nocapture`. Criteria hold a
//! shared lock, so each runtime is measured without competing tests.

use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

use snse::diagnostics::*;
use snse::fourier::Grid;
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{InitialCondition, SolverConfig};

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn verdict(name: &str, pass: bool, detail: String, started: Instant, budget_s: f64) {
    let secs = started.elapsed().as_secs_f64();
    let timely = secs < budget_s;
    let status = if pass && timely { "PASS" } else { "FAIL" };
    println!("{status} {name}: {detail} [{secs:.1} s of {budget_s} s]");
    assert!(pass, "{name} failed: {detail}");
    assert!(timely, "{name} exceeded its time budget: {secs:.1} s");
}

/// Initial datum shared by the ensemble studies: content well past n = 32.
fn initial() -> InitialCondition {
    InitialCondition::RandomSpectrum { seed: 7, amplitude: 1.0, kmax: 40, decay: 2.0 }
}

fn multiplicative_noise(c0: f64) -> NoiseModel {
    NoiseModel::linear(NoiseBasis::new(2, 16).unwrap(), c0, 1.0, true).unwrap()
}

#[test]
fn operator_identities() {
    let _lock = serial();
    let t = Instant::now();
    let r = identity_report(&IdentityParams { dims: vec![1, 2, 3], fields_per_dim: 50, seed: 1, tolerance: 1e-10 }).unwrap();
    let worst = r.verdicts.iter().map(|v| v.detail.clone()).collect::<Vec<_>>().join("; ");
    verdict("operator_identities", r.pass(), worst, t, 30.0);
}

#[test]
fn convective_cancellation() {
    let _lock = serial();
    let t = Instant::now();
    let c = cancellation_check(3, 8, 20, 2).unwrap();
    verdict("convective_cancellation", c.max_ratio < 1e-8, format!("max ratio {:.3e}", c.max_ratio), t, 10.0);
}

#[test]
fn partial_sum_decay() {
    let _lock = serial();
    let t = Instant::now();
    let ladder = [4, 8, 16, 32, 64];
    let mut studies = Vec::new();
    for (dim, points) in [(1, 512), (2, 256)] {
        let grid = Grid::new(dim, points).unwrap();
        for q in [2.0, 4.0] {
            let corpus = decay_corpus(grid, q, 0.5, 20, 3);
            studies.push(operator_decay_study(q, &ladder, &corpus).unwrap());
        }
    }
    let pass = studies.iter().all(|s| s.pass);
    let detail = studies
        .iter()
        .map(|s| format!("d={} q={} alpha {:.3} (predicted {:.3})", s.dim, s.q, s.measured_alpha, s.predicted_alpha))
        .collect::<Vec<_>>()
        .join("; ");
    verdict("partial_sum_decay", pass, detail, t, 120.0);
}

#[test]
fn partial_sum_boundedness() {
    let _lock = serial();
    let t = Instant::now();
    let ladder = [4, 8, 16, 32, 64];
    let mut studies = Vec::new();
    for (dim, points) in [(1, 512), (2, 256)] {
        let corpus = uniform_corpus(Grid::new(dim, points).unwrap(), 100, 4);
        for q in [2.0, 4.0] {
            studies.push(uniform_bound_study(q, &ladder, &corpus).unwrap());
        }
    }
    let pass = studies.iter().all(|s| s.pass);
    let detail = studies
        .iter()
        .map(|s| {
            let per_n: Vec<String> = s.max_ratio.iter().map(|r| format!("{r:.4}")).collect();
            format!("d={} q={} maxima [{}] variation {:.4}", s.dim, s.q, per_n.join(" "), s.variation)
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict("partial_sum_boundedness", pass, detail, t, 60.0);
}

#[test]
fn gagliardo_nirenberg() {
    let _lock = serial();
    let t = Instant::now();
    let s = gn_study(3, 4.0, 2, 100, 32, 5).unwrap();
    let r = gn_report(&s, 1e-10, 0.1).unwrap();
    let detail = format!(
        "max ratio {:.5e} (N={}) {:.5e} (N={}), change {:.4}, scale defect {:.2e}",
        s.max_ratio_coarse, s.coarse_points, s.max_ratio_fine, s.fine_points, s.refinement_change, s.scale_defect
    );
    verdict("gagliardo_nirenberg", r.pass(), detail, t, 60.0);
}

#[test]
fn energy_uniformity() {
    let _lock = serial();
    let t = Instant::now();
    let ic = initial();
    let base = SolverConfig { horizon: 0.1, seed: 11, ..SolverConfig::new(2, 8) };
    let cutoff = ic.cutoff_level(2, &[8, 16, 32, 64], base.p).unwrap();
    let cfg = SolverConfig { cutoff_m: cutoff, ..base };
    let s = energy_uniformity_study(&cfg, &multiplicative_noise(0.5), &ic, &[8, 16, 32], 64).unwrap();
    let detail = format!(
        "means {:?}, spread {:.3}, C {:.4}",
        s.per_n.iter().map(|e| (e.n, e.stats.mean)).collect::<Vec<_>>(),
        s.spread,
        s.fitted_constant
    );
    verdict("energy_uniformity", s.within_factor_two && s.below_fitted_bound, detail, t, 600.0);
}

#[test]
fn cauchy_property() {
    let _lock = serial();
    let t = Instant::now();
    let ic = initial();
    let base = SolverConfig { horizon: 0.1, seed: 13, ..SolverConfig::new(2, 8) };
    let cutoff = ic.cutoff_level(2, &[8, 16, 32, 64], base.p).unwrap();
    let cfg = SolverConfig { cutoff_m: cutoff, ..base };
    let stochastic = cauchy_study(&cfg, &multiplicative_noise(0.5), &ic, &[8, 16, 32], 64).unwrap();
    let zero = NoiseModel::zero(NoiseBasis::new(2, 1).unwrap());
    let deterministic = cauchy_study(&cfg, &zero, &ic, &[4, 8, 16, 32], 1).unwrap();
    let r = cauchy_verification(&stochastic, &deterministic, 1.0).unwrap();
    let detail = format!(
        "pairs {:?}, deterministic slope {:.3}",
        stochastic.pairs.iter().map(|p| (p.m, p.n, p.quantity.mean, p.quantity.std_error)).collect::<Vec<_>>(),
        deterministic.slope
    );
    verdict("cauchy_property", r.pass(), detail, t, 900.0);
}

#[test]
fn stopping_positivity_and_tail() {
    let _lock = serial();
    let t = Instant::now();
    let ic = initial();
    let base = SolverConfig { seed: 17, ..SolverConfig::new(2, 8) };
    let cutoff = ic.cutoff_level(2, &[8, 16, 32, 64], base.p).unwrap();
    let cfg = SolverConfig { cutoff_m: cutoff, ..base };
    let u0 = ic.build(cfg.grid().unwrap(), cfg.n).unwrap();
    let s = tail_study(&cfg, &multiplicative_noise(12.0), &u0, 256, &[0.2, 0.1, 0.05], cutoff).unwrap();
    let r = s.report().unwrap();
    let detail = format!(
        "M {:.4}, positive fraction {}, min tau {:.3e}, tail {:?}",
        cutoff,
        s.positive_fraction,
        s.min_stop_time,
        s.points.iter().map(|p| (p.horizon, p.probability.mean, p.probability.std_error)).collect::<Vec<_>>()
    );
    verdict("stopping_positivity_and_tail", r.pass(), detail, t, 600.0);
}

#[test]
fn pathwise_uniqueness() {
    let _lock = serial();
    let t = Instant::now();
    let cfg = SolverConfig { horizon: 0.05, dt: 1e-3, seed: 19, ..SolverConfig::new(2, 8) };
    let noise = NoiseModel::additive(NoiseBasis::new(2, 16).unwrap(), 1.0, 1.0).unwrap();
    let u0 = initial().build(cfg.grid().unwrap(), cfg.n).unwrap();
    let picard = uniqueness_check(&cfg, &noise, &u0, 0, Comparison::Picard { tol: 1e-10, max_iters: 50 }).unwrap();
    let rerun = uniqueness_check(&cfg, &noise, &u0, 0, Comparison::Rerun).unwrap();
    let r = uniqueness_verification(&picard, &rerun, cfg.dt).unwrap();
    let detail = format!(
        "picard {:.3e} after {:?} iterations, rerun {:e}",
        picard.sup_lp_difference, picard.picard_iterations, rerun.sup_lp_difference
    );
    verdict("pathwise_uniqueness", r.pass(), detail, t, 120.0);
}

#[test]
fn scheme_validation() {
    let _lock = serial();
    let t = Instant::now();
    let noise = NoiseModel::additive(NoiseBasis::new(2, 8).unwrap(), 1.0, 1.0).unwrap();
    let ou = ou_check(&SolverConfig { seed: 23, ..SolverConfig::new(2, 4) }, &noise, 10_000, 3.0).unwrap();
    let cfg = SolverConfig { dt: 2.5e-4, horizon: 0.1, seed: 29, ..SolverConfig::new(2, 4) };
    let u0 = initial().build(cfg.grid().unwrap(), cfg.n).unwrap();
    let order = strong_order_study(&cfg, &noise, &u0, &[16, 8, 4], 16).unwrap();
    let r = scheme_verification(&ou, &order, 0.4).unwrap();
    let detail = format!(
        "OU max |z| {:.3} over {} coefficients, strong order {:.3} (errors {:?})",
        ou.max_abs_z,
        ou.modes.len(),
        order.order,
        order.errors
    );
    verdict("scheme_validation", r.pass(), detail, t, 300.0);
}
