//! Stationary statistics of the linear additive problem against the exact
//! AR(1) recursion, and the strong order of the integrator.
//!
//! `cargo run --release --example scheme_validation`

use snse::diagnostics::{ou_check, strong_order_study};
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{InitialCondition, SolverConfig};

fn main() -> snse::Result<()> {
    let noise = NoiseModel::additive(NoiseBasis::new(2, 8)?, 1.0, 1.0)?;
    let ou = ou_check(&SolverConfig { seed: 23, ..SolverConfig::new(2, 4) }, &noise, 5000, 3.0)?;
    for m in ou.modes.iter().take(6) {
        println!(
            "k={:?} comp {} {}: sample {:.4e} theory {:.4e} z {:+.2}",
            &m.wavevector[..2], m.component, m.part, m.sample, m.theoretical, m.z
        );
    }
    println!("max |z| {:.3} over {} coefficients", ou.max_abs_z, ou.modes.len());

    let cfg = SolverConfig { dt: 2.5e-4, horizon: 0.1, seed: 29, ..SolverConfig::new(2, 4) };
    let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(cfg.grid()?, cfg.n)?;
    let s = strong_order_study(&cfg, &noise, &u0, &[16, 8, 4], 8)?;
    for (dt, e) in s.dts.iter().zip(&s.errors) {
        println!("dt {dt:.1e}: RMS error {e:.4e}");
    }
    println!("strong order {:.3}", s.order);
    Ok(())
}
