//! One Galerkin path: trajectory CSV on stdout and a field snapshot that
//! round-trips through its binary format.
//!
//! `cargo run --example simulate_path > trajectory.csv`

use snse::fourier::Snapshot;
use snse::noise::{NoiseBasis, NoiseModel};
use snse::solver::{simulate_path, InitialCondition, RecordOptions, SolverConfig};

fn main() -> snse::Result<()> {
    let ic = InitialCondition::RandomSpectrum { seed: 7, amplitude: 1.0, kmax: 12, decay: 2.0 };
    let base = SolverConfig { horizon: 0.05, seed: 1, ..SolverConfig::new(2, 8) };
    let cfg = SolverConfig { cutoff_m: ic.cutoff_level(2, &[8], base.p)?, ..base };
    let noise = NoiseModel::linear(NoiseBasis::new(2, 16)?, 0.5, 1.0, true)?;
    let u0 = ic.build(cfg.grid()?, cfg.n)?;
    let rec = simulate_path(&cfg, &noise, &u0, 0, RecordOptions { gradient_energy: true, keep_states: true })?;
    rec.write_csv(std::io::stdout())?;

    let last = rec.states.last().expect("initial state kept");
    let bytes = Snapshot::capture(last, &cfg.truncation(), rec.stop_time)?.to_bytes();
    let back = Snapshot::read_from(&bytes[..])?.to_field(cfg.grid()?)?;
    eprintln!(
        "M = {:.4}, {:?} at t = {}, snapshot {} bytes, round-trip error {:.1e}",
        cfg.cutoff_m,
        rec.reason,
        rec.stop_time,
        bytes.len(),
        back.max_abs_diff(last)?
    );
    Ok(())
}
