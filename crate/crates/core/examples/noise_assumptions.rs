//! Built-in noise models and the empirical check of their growth,
//! Lipschitz and structure conditions.
//!
//! `cargo run --example noise_assumptions`

use snse::fourier::random::random_solenoidal;
use snse::fourier::{Grid, MultiIndex};
use snse::noise::{path_rng, verify_assumptions, NoiseBasis, NoiseModel};

fn main() -> snse::Result<()> {
    let grid = Grid::for_truncation(2, 4)?;
    let mut rng = path_rng(3, 0);
    let corpus: Vec<_> = (0..6)
        .map(|_| {
            let u = random_solenoidal(grid, &MultiIndex::cube(2, 4), &mut rng);
            let norm = u.l2_norm();
            u.scale(1.0 / norm)
        })
        .collect();
    let basis = NoiseBasis::new(2, 12)?;
    for (i, m) in basis.modes().iter().take(4).enumerate() {
        println!("basis {i}: wavevector {:?} {:?}", &m.wavevector[..2], m.parity);
    }
    let models = [
        NoiseModel::additive(basis.clone(), 1.0, 1.0)?,
        NoiseModel::linear(basis.clone(), 0.5, 1.0, true)?,
        NoiseModel::linear(basis, 0.5, 1.0, false)?,
    ];
    for model in &models {
        let r = verify_assumptions(model, &corpus, 4.0)?;
        println!("{:<18} HS mass {:.4} pass {}", r.model, r.hilbert_schmidt_mass, r.pass);
        for s in r.growth.iter().chain(&r.lipschitz) {
            println!("    {:<14} max {:.3e} growth {:.3}", s.label, s.max, s.growth_factor);
        }
    }
    Ok(())
}
