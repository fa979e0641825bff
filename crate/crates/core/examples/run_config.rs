//! Driving a command from a TOML run file, as the `snse` binary does.
//!
//! `cargo run --example run_config`

use snse::commands::{run, Command};
use snse::config::{Overrides, RunConfig};

const RUN: &str = r#"
[grid]
n = 4
[solver]
horizon = 0.02
initial = { kind = "taylor_green", amplitude = 1.0 }
[noise]
variant = "additive"
modes = 8
"#;

fn main() -> snse::Result<()> {
    let mut cfg = RunConfig::from_toml(RUN)?;
    cfg.apply(&Overrides { seed: Some(3), ..Default::default() });
    println!("config hash {}", cfg.content_hash()?);
    let out = std::env::temp_dir().join("snse-example");
    let outcome = run(Command::Simulate, &cfg, None, &out, 1)?;
    for r in &outcome.reports {
        for v in &r.verdicts {
            println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.detail);
        }
    }
    println!("outputs in {}", outcome.manifest.output_dir.display());
    Ok(())
}
