//! The Euler–Maruyama path against the fixed point of the gated Picard
//! iteration, an exact rerun and another time discretization.
//!
//! `cargo run --example picard_uniqueness`

use snse::diagnostics::{uniqueness_check, Comparison};
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{InitialCondition, Scheme, SolverConfig};

fn main() -> snse::Result<()> {
    let cfg = SolverConfig { horizon: 0.05, dt: 1e-3, seed: 19, ..SolverConfig::new(2, 8) };
    let noise = NoiseModel::additive(NoiseBasis::new(2, 16)?, 1.0, 1.0)?;
    let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(cfg.grid()?, cfg.n)?;
    for cmp in [
        Comparison::Picard { tol: 1e-10, max_iters: 50 },
        Comparison::Rerun,
        Comparison::Scheme { scheme: Scheme::SemiImplicitEm },
        Comparison::OtherPath { path: 1 },
    ] {
        let r = uniqueness_check(&cfg, &noise, &u0, 0, cmp)?;
        println!("{cmp:?}: sup |u - v|_p = {:.3e} ({:?} iterations)", r.sup_lp_difference, r.picard_iterations);
    }
    Ok(())
}
