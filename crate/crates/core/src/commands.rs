//! Batch commands behind the `snse` binary. Each writes its manifest, then
//! its reports to `reports/*.json` and plot-ready series to `data/*.csv`.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

use crate::config::{RunConfig, RunManifest};
use crate::diagnostics::*;
use crate::error::{Error, Result};
use crate::fourier::random::random_solenoidal;
use crate::fourier::{Grid, MultiIndex, Snapshot, SpectralField};
use crate::noise::{path_rng, verify_assumptions, NoiseBasis, NoiseModel};
use crate::solver::{simulate_path, RecordOptions, StopReason};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Simulate,
    Ensemble,
    Cauchy,
    Assumptions,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Verify => "verify",
            Self::Simulate => "simulate",
            Self::Ensemble => "ensemble",
            Self::Cauchy => "cauchy",
            Self::Assumptions => "assumptions",
        }
    }
}

/// Reports emitted by one command.
#[derive(Debug)]
pub struct Outcome {
    pub manifest: RunManifest,
    pub reports: Vec<VerificationReport>,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass())
    }

    /// 0 iff every verdict passed.
    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }
}

/// Validates the configuration, writes the manifest and runs `command` on a
/// pool of `jobs` worker threads.
pub fn run(
    command: Command,
    cfg: &RunConfig,
    config_path: Option<&Path>,
    out_root: &Path,
    jobs: usize,
) -> Result<Outcome> {
    cfg.solver_config()?;
    let manifest = RunManifest::new(command.name(), cfg, config_path, out_root)?;
    manifest.write()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let reports = pool.install(|| match command {
        Command::Verify => cmd_verify(cfg, &manifest),
        Command::Simulate => cmd_simulate(cfg, &manifest),
        Command::Ensemble => cmd_ensemble(cfg, &manifest),
        Command::Cauchy => cmd_cauchy(cfg, &manifest),
        Command::Assumptions => cmd_assumptions(cfg, &manifest),
    })?;
    Ok(Outcome { manifest, reports })
}

fn write_report(m: &RunManifest, r: &VerificationReport) -> Result<()> {
    r.write_json(BufWriter::new(File::create(m.reports_dir().join(format!("{}.json", r.study)))?))
}

fn write_series(m: &RunManifest, name: &str, points: &[SeriesPoint]) -> Result<()> {
    write_series_csv(points, File::create(m.data_dir().join(format!("{name}.csv")))?)
}

/// Grid for a partial-sum study along `ladder`: room for the top rung.
fn study_grid(dim: usize, ladder: &[usize]) -> Result<Grid> {
    let top = ladder.iter().copied().max().ok_or(Error::Empty("ladder"))?;
    Grid::new(dim, if dim == 1 { 8 * top } else { 4 * top })
}

/// Operator identities, convective cancellation, partial-sum decay and
/// boundedness, and the Gagliardo–Nirenberg ratio.
pub fn cmd_verify(cfg: &RunConfig, m: &RunManifest) -> Result<Vec<VerificationReport>> {
    let d = &cfg.diagnostics;
    let seed = cfg.solver.seed;
    let mut reports = vec![identity_report(&IdentityParams {
        dims: d.identity_dims.clone(),
        fields_per_dim: d.identity_fields,
        seed,
        tolerance: d.identity_tolerance,
    })?];
    let check = cancellation_check(cfg.grid.dim.max(2), cfg.grid.n, d.cancellation_pairs, seed)?;
    reports.push(cancellation_report(&check, d.cancellation_tolerance)?);

    let mut decay = Vec::new();
    let mut uniform = Vec::new();
    for dim in [1, 2] {
        let grid = study_grid(dim, &d.ladder)?;
        let mixed = uniform_corpus(grid, d.uniform_fields, seed);
        for &q in &d.q_values {
            let s = operator_decay_study(q, &d.ladder, &decay_corpus(grid, q, d.decay_eps, d.decay_fields, seed))?;
            write_series(m, &format!("partial_sum_decay_q{q}_d{dim}"), &s.series())?;
            decay.push(s);
            let u = uniform_bound_study(q, &d.ladder, &mixed)?;
            write_series(m, &format!("partial_sum_boundedness_q{q}_d{dim}"), &u.series())?;
            uniform.push(u);
        }
    }
    reports.push(decay_report(&decay)?);
    reports.push(uniform_report(&uniform)?);

    let gn = gn_study(3, cfg.solver.p, d.gn_band, d.gn_fields, d.gn_points, seed)?;
    reports.push(gn_report(&gn, 1e-10, 0.1)?);
    for r in &reports {
        write_report(m, r)?;
    }
    Ok(reports)
}

#[derive(Serialize)]
struct PathSummary {
    steps: usize,
    reason: StopReason,
    stop_time: f64,
    l2_energy: f64,
    lp_energy: f64,
}

/// One path: `data/trajectory.csv` and snapshots `fields/initial.bin`,
/// `fields/final.bin`.
pub fn cmd_simulate(cfg: &RunConfig, m: &RunManifest) -> Result<Vec<VerificationReport>> {
    let sc = cfg.solver_config()?;
    let noise = cfg.noise_model()?;
    let u0 = cfg.solver.initial.build(sc.grid()?, sc.n)?;
    let rec = simulate_path(&sc, &noise, &u0, 0, RecordOptions { gradient_energy: true, keep_states: true })?;
    rec.write_csv(File::create(m.data_dir().join("trajectory.csv"))?)?;
    let last = rec.states.last().expect("initial state is always kept");
    for (name, field, t) in [("initial", &u0, 0.0), ("final", last, rec.stop_time)] {
        let snap = Snapshot::capture(field, &sc.truncation(), t)?;
        snap.write_to(BufWriter::new(File::create(m.fields_dir().join(format!("{name}.bin")))?))?;
    }
    let summary = PathSummary {
        steps: rec.rows.len() - 1,
        reason: rec.reason,
        stop_time: rec.stop_time,
        l2_energy: rec.l2_energy(),
        lp_energy: rec.lp_energy(),
    };
    let verdicts = vec![Verdict::new(
        "path_finite",
        rec.reason != StopReason::BlowUp,
        format!("{:?} at t = {}", rec.reason, rec.stop_time),
    )];
    let report = VerificationReport::new("simulation", &sc, &summary, verdicts)?;
    write_report(m, &report)?;
    Ok(vec![report])
}

/// Energy expectations at `n`, their uniformity across the truncation list
/// and the stopping-time tail study.
pub fn cmd_ensemble(cfg: &RunConfig, m: &RunManifest) -> Result<Vec<VerificationReport>> {
    let sc = cfg.solver_config()?;
    let noise = cfg.noise_model()?;
    let paths = cfg.solver.paths;
    let u0 = cfg.solver.initial.build(sc.grid()?, sc.n)?;
    let l2 = ensemble_expectation(&sc, &noise, &u0, paths, Functional::L2Energy)?;
    let lp = ensemble_expectation(&sc, &noise, &u0, paths, Functional::LpEnergy)?;
    let finite = Verdict::new(
        "expectations_finite",
        l2.mean.is_finite() && lp.mean.is_finite(),
        format!("L2 {:.6e}, Lp {:.6e}", l2.mean, lp.mean),
    );
    let expectations = VerificationReport::new(
        "ensemble_expectation",
        &(&sc, paths),
        &serde_json::json!({ "l2_energy": l2, "lp_energy": lp }),
        vec![finite],
    )?;

    let uniformity = energy_uniformity_study(&sc, &noise, &cfg.solver.initial, &cfg.diagnostics.truncations, paths)?;
    write_series(m, "energy_uniformity", &uniformity.series())?;
    let tail = tail_study(&sc, &noise, &u0, paths, &cfg.diagnostics.horizons, sc.cutoff_m)?;
    write_series(m, "stopping_tail", &tail.series())?;

    let reports = vec![expectations, uniformity.report()?, tail.report()?];
    for r in &reports {
        write_report(m, r)?;
    }
    Ok(reports)
}

/// Cauchy differences across the truncation list with shared increments,
/// plus the zero-noise analogue.
pub fn cmd_cauchy(cfg: &RunConfig, m: &RunManifest) -> Result<Vec<VerificationReport>> {
    let sc = cfg.solver_config()?;
    let noise = cfg.noise_model()?;
    let ns = &cfg.diagnostics.truncations;
    let stochastic = cauchy_study(&sc, &noise, &cfg.solver.initial, ns, cfg.solver.paths)?;
    let zero = NoiseModel::zero(NoiseBasis::new(sc.dim, 1)?);
    let deterministic = cauchy_study(&sc, &zero, &cfg.solver.initial, ns, 1)?;
    write_series(m, "cauchy", &stochastic.series())?;
    write_series(m, "cauchy_deterministic", &deterministic.series())?;
    let report = cauchy_verification(&stochastic, &deterministic, 1.0)?;
    write_report(m, &report)?;
    Ok(vec![report])
}

/// Growth, Lipschitz, gradient and structure conditions of the configured
/// noise over random divergence-free fields.
pub fn cmd_assumptions(cfg: &RunConfig, m: &RunManifest) -> Result<Vec<VerificationReport>> {
    let sc = cfg.solver_config()?;
    let noise = cfg.noise_model()?;
    let grid = sc.grid()?;
    let mut rng = path_rng(cfg.solver.seed, 500);
    let corpus: Vec<SpectralField> = (0..cfg.diagnostics.assumption_fields.max(1))
        .map(|_| {
            let u = random_solenoidal(grid, &MultiIndex::cube(sc.dim, sc.n), &mut rng);
            let norm = u.l2_norm();
            u.scale(1.0 / norm)
        })
        .collect();
    let a = verify_assumptions(&noise, &corpus, sc.p)?;
    let mut verdicts: Vec<Verdict> = a
        .growth
        .iter()
        .chain(&a.lipschitz)
        .chain(std::iter::once(&a.gradient))
        .map(|s| Verdict::new(s.label.clone(), s.bounded, format!("max {:.4e}, growth {:.4}", s.max, s.growth_factor)))
        .collect();
    verdicts.push(Verdict::new(
        "divergence_preserved",
        a.divergence_residual < crate::noise::assumptions::RESIDUAL_TOLERANCE,
        format!("residual {:.3e}", a.divergence_residual),
    ));
    verdicts.push(Verdict::new(
        "mean_preserved",
        a.mean_residual < crate::noise::assumptions::RESIDUAL_TOLERANCE,
        format!("residual {:.3e}", a.mean_residual),
    ));
    let report = VerificationReport::new("noise_assumptions", &cfg.noise, &a, verdicts)?;
    write_report(m, &report)?;
    Ok(vec![report])
}
