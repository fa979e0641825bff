//! Differences between truncation levels driven by the same Brownian path,
//! with and without noise.
//!
//! `cargo run --release --example cauchy_convergence`

use snse::diagnostics::cauchy_study;
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{InitialCondition, SolverConfig};

fn main() -> snse::Result<()> {
    let ic = InitialCondition::RandomSpectrum { seed: 7, amplitude: 1.0, kmax: 40, decay: 2.0 };
    let cfg = SolverConfig { horizon: 0.05, seed: 13, ..SolverConfig::new(2, 4) };
    let noisy = NoiseModel::linear(NoiseBasis::new(2, 16)?, 0.5, 1.0, true)?;
    let zero = NoiseModel::zero(NoiseBasis::new(2, 1)?);
    for (noise, paths) in [(&noisy, 8), (&zero, 1)] {
        let r = cauchy_study(&cfg, noise, &ic, &[4, 8, 16], paths)?;
        println!("{} noise:", r.noise);
        for p in &r.pairs {
            println!("  ({:>2}, {:>2}) mean {:.4e}", p.m, p.n, p.quantity.mean);
        }
        println!("  slope in min(m, n): {:.3}", r.slope);
    }
    Ok(())
}
