//! Stopping times at the level `M = 2 sup_n |S_n u0|_p + 1` and the tail
//! probability of the `L^p` energy as the horizon shrinks.
//!
//! `cargo run --release --example stopping_tail`

use snse::diagnostics::tail_study;
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{InitialCondition, SolverConfig};

fn main() -> snse::Result<()> {
    let ic = InitialCondition::RandomSpectrum { seed: 7, amplitude: 1.0, kmax: 40, decay: 2.0 };
    let base = SolverConfig { seed: 17, ..SolverConfig::new(2, 8) };
    let level = ic.cutoff_level(2, &[8, 16, 32, 64], base.p)?;
    let cfg = SolverConfig { cutoff_m: level, ..base };
    let noise = NoiseModel::linear(NoiseBasis::new(2, 16)?, 12.0, 1.0, true)?;
    let u0 = ic.build(cfg.grid()?, cfg.n)?;
    let s = tail_study(&cfg, &noise, &u0, 128, &[0.2, 0.1, 0.05], level)?;
    println!("M = {level:.4}; smallest tau {:.3e}; fraction with tau >= dt {}", s.min_stop_time, s.positive_fraction);
    for p in &s.points {
        println!("S = {:<5} P[energy >= M^p] = {:.4}", p.horizon, p.probability.mean);
    }
    Ok(())
}
