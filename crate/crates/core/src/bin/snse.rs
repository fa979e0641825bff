use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use snse::commands::{run, Command};
use snse::config::{output_root, Overrides, RunConfig};
use snse::noise::NoiseVariant;

#[derive(Parser)]
#[command(name = "snse", version, about = "Stochastic Navier-Stokes Galerkin simulator and verification suite")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Sub {
    /// Operator identities, cancellation, partial-sum and Gagliardo-Nirenberg studies.
    Verify,
    /// One path: trajectory CSV and field snapshots.
    Simulate,
    /// Energy expectations, n-uniformity and the stopping-time tail.
    Ensemble,
    /// Differences between truncation levels on shared increments.
    Cauchy,
    /// Growth, Lipschitz and structure conditions of the noise.
    Assumptions,
}

#[derive(Args)]
struct Common {
    /// TOML run file; omitted sections take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output root, default $SNSE_OUT or ./out.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Lattice points per axis.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true)]
    dt: Option<f64>,
    #[arg(long, global = true)]
    horizon: Option<f64>,
    #[arg(long, global = true)]
    p: Option<f64>,
    #[arg(long = "cutoff-M", global = true)]
    cutoff_m: Option<f64>,
    /// zero, additive or linear.
    #[arg(long, global = true)]
    noise: Option<NoiseVariant>,
    #[arg(long, global = true)]
    paths: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let command = match cli.command {
        Sub::Verify => Command::Verify,
        Sub::Simulate => Command::Simulate,
        Sub::Ensemble => Command::Ensemble,
        Sub::Cauchy => Command::Cauchy,
        Sub::Assumptions => Command::Assumptions,
    };
    let result = (|| {
        let mut cfg = match &c.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.apply(&Overrides {
            seed: c.seed,
            n: c.n,
            points: c.grid,
            dt: c.dt,
            horizon: c.horizon,
            p: c.p,
            cutoff_m: c.cutoff_m,
            noise: c.noise.clone(),
            paths: c.paths,
        });
        run(command, &cfg, c.config.as_deref(), &output_root(c.out.as_deref()), c.jobs)
    })();
    match result {
        Ok(outcome) => {
            for report in &outcome.reports {
                for v in &report.verdicts {
                    let status = if v.pass { "PASS" } else { "FAIL" };
                    println!("{status} {}/{}: {}", report.study, v.name, v.detail);
                }
            }
            println!("{}", outcome.manifest.output_dir.display());
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
