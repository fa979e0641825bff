//! Monte-Carlo energy expectations and their uniformity in `n`.
//!
//! `cargo run --release --example energy_ensemble`

use snse::diagnostics::{energy_uniformity_study, ensemble_expectation, Functional};
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{InitialCondition, SolverConfig};

fn main() -> snse::Result<()> {
    let ic = InitialCondition::RandomSpectrum { seed: 7, amplitude: 1.0, kmax: 24, decay: 2.0 };
    let base = SolverConfig { horizon: 0.05, seed: 11, ..SolverConfig::new(2, 8) };
    let cfg = SolverConfig { cutoff_m: ic.cutoff_level(2, &[4, 8, 16], base.p)?, ..base };
    let noise = NoiseModel::linear(NoiseBasis::new(2, 16)?, 0.5, 1.0, true)?;

    let u0 = ic.build(cfg.grid()?, cfg.n)?;
    for f in [Functional::L2Energy, Functional::LpEnergy] {
        let s = ensemble_expectation(&cfg, &noise, &u0, 16, f)?;
        println!("{f:?}: mean {:.5} +- {:.5}", s.mean, s.std_error.unwrap_or(f64::NAN));
    }
    let u = energy_uniformity_study(&cfg, &noise, &ic, &[4, 8, 16], 16)?;
    for e in &u.per_n {
        println!("n={:>2}: E[sup|u|^2 + int|grad u|^2] = {:.5}", e.n, e.stats.mean);
    }
    println!("spread {:.3}, within a factor two: {}", u.spread, u.within_factor_two);
    Ok(())
}
