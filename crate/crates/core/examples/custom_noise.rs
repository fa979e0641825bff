//! Plugging a user-defined noise coefficient into the solver.
//!
//! `cargo run --example custom_noise`

use std::sync::Arc;

use snse::fourier::SpectralField;
use snse::noise::{NoiseBasis, NoiseCoefficient, NoiseModel};
use snse::solver::{simulate_path, InitialCondition, RecordOptions, SolverConfig};

/// `σ(u)e_k = c u / (1 + |u|_2)` on every mode: bounded, Lipschitz.
#[derive(Debug)]
struct Saturating {
    modes: usize,
    c: f64,
}

impl NoiseCoefficient for Saturating {
    fn name(&self) -> &str {
        "saturating"
    }

    fn mode_count(&self) -> usize {
        self.modes
    }

    fn apply(&self, u: &SpectralField) -> snse::Result<Vec<SpectralField>> {
        let s = u.scale(self.c / (1.0 + u.l2_norm()));
        Ok(vec![s; self.modes])
    }
}

fn main() -> snse::Result<()> {
    let basis = NoiseBasis::new(2, 6)?;
    let noise = NoiseModel::custom(basis, Arc::new(Saturating { modes: 6, c: 0.8 }))?;
    let cfg = SolverConfig { horizon: 0.1, seed: 4, ..SolverConfig::new(2, 8) };
    let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(cfg.grid()?, cfg.n)?;
    let rec = simulate_path(&cfg, &noise, &u0, 0, RecordOptions::default())?;
    let last = rec.final_row();
    println!("{}: |u(S)|_2 = {:.5}, stopped by {:?}", noise.name(), last.l2, rec.reason);
    Ok(())
}
