use std::io::Write;

use serde::Serialize;

use super::config::SolverConfig;
use super::monitor::StoppingMonitor;
use super::step::{SolverState, Stepper};
use crate::error::{Error, Result};
use crate::fourier::ops::leray_project_unchecked;
use crate::fourier::{
    composite_gradient_energy, inverse_transform, lp_norm_pow, square_truncate, PhysicalField,
    SpectralField,
};
use crate::noise::{path_rng, BrownianPath, NoiseModel};

/// Norms of the state at one grid time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub l2: f64,
    pub grad_l2: f64,
    pub lp: f64,
    /// `‖u‖_{3p}`.
    pub l3p: f64,
    /// `Σ_j ∫|∇(|u_j|^{p/2})|²`, or NaN when not requested.
    pub energy_grad_p: f64,
    pub monitor_stat: f64,
    pub stopped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Horizon,
    /// The stopping statistic reached `M`.
    Threshold,
    /// A non-finite coefficient appeared; the path ends at the previous step.
    BlowUp,
}

/// Recorded path up to `min(S, τ, blow-up)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRecord {
    pub dt: f64,
    pub p: f64,
    pub rows: Vec<TrajectoryRow>,
    pub reason: StopReason,
    /// `τ ∧ S`; for a blow-up, the last finite time.
    pub stop_time: f64,
    /// Spectral states per row, when requested.
    #[serde(skip)]
    pub states: Vec<SpectralField>,
}

impl TrajectoryRecord {
    pub fn final_row(&self) -> &TrajectoryRow {
        self.rows.last().expect("a record has at least the initial row")
    }

    /// `sup_t ‖u‖₂² + ∫ ‖∇u‖₂² dt` with the left-endpoint rule of the monitor.
    pub fn l2_energy(&self) -> f64 {
        let sup = self.rows.iter().map(|r| r.l2 * r.l2).fold(0.0, f64::max);
        sup + self.left_integral(|r| r.grad_l2 * r.grad_l2)
    }

    /// `sup_t ‖u‖_p^p + ∫ Σ_j ∫|∇(|u_j|^{p/2})|² dt`; needs the gradient energy rows.
    pub fn lp_energy(&self) -> f64 {
        let sup = self.rows.iter().map(|r| r.lp.powf(self.p)).fold(0.0, f64::max);
        sup + self.left_integral(|r| r.energy_grad_p)
    }

    /// The record cut at time `horizon`, as if the path had been run to it.
    pub fn truncated(&self, horizon: f64) -> TrajectoryRecord {
        let eps = 1e-9 * self.dt;
        let keep = self.rows.iter().take_while(|r| r.t <= horizon + eps).count();
        let (reason, stop_time) = if self.stop_time <= horizon + eps {
            (self.reason, self.stop_time)
        } else {
            (StopReason::Horizon, self.rows[keep - 1].t)
        };
        TrajectoryRecord {
            dt: self.dt,
            p: self.p,
            rows: self.rows[..keep].to_vec(),
            reason,
            stop_time,
            states: self.states.iter().take(keep).cloned().collect(),
        }
    }

    fn left_integral(&self, f: impl Fn(&TrajectoryRow) -> f64) -> f64 {
        let n = self.rows.len().saturating_sub(1);
        self.rows[..n].iter().map(|r| self.dt * f(r)).sum()
    }

    /// Writes the rows as CSV.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "t",
            "l2",
            "grad_l2",
            "lp",
            "l3p",
            "energy_grad_p",
            "monitor_stat",
            "stopped",
        ])?;
        for r in &self.rows {
            out.write_record(&[
                format!("{:e}", r.t),
                format!("{:e}", r.l2),
                format!("{:e}", r.grad_l2),
                format!("{:e}", r.lp),
                format!("{:e}", r.l3p),
                format!("{:e}", r.energy_grad_p),
                format!("{:e}", r.monitor_stat),
                (r.stopped as u8).to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// What to keep besides the monitor statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecordOptions {
    /// Evaluate the finite-difference gradient energy of `|u_j|^{p/2}`.
    pub gradient_energy: bool,
    pub keep_states: bool,
}

/// Projects `u0` onto the Galerkin space: `𝒫 S_n u0` with the mean removed.
pub fn project_initial(u0: &SpectralField, cfg: &SolverConfig) -> Result<SpectralField> {
    let grid = cfg.grid()?;
    let u0 = if u0.grid() == grid {
        u0.clone()
    } else {
        u0.resample(grid)?
    };
    if u0.ncomp() != cfg.dim {
        return Err(Error::ShapeMismatch(format!(
            "initial datum has {} components, expected {}",
            u0.ncomp(),
            cfg.dim
        )));
    }
    u0.require_mean_zero()?;
    let mut u = leray_project_unchecked(&square_truncate(&u0, cfg.n));
    u.remove_mean();
    Ok(u)
}

/// Simulates one path driven by increments drawn from `path_rng(cfg.seed, path)`.
pub fn simulate_path(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    path: u64,
    options: RecordOptions,
) -> Result<TrajectoryRecord> {
    let mut rng = path_rng(cfg.seed, path);
    let bm = BrownianPath::generate(noise.basis(), cfg.dt, cfg.steps(), &mut rng)?;
    simulate_path_with(cfg, noise, u0, &bm, options)
}

/// Simulates one path driven by the given increments.
pub fn simulate_path_with(
    cfg: &SolverConfig,
    noise: &NoiseModel,
    u0: &SpectralField,
    bm: &BrownianPath,
    options: RecordOptions,
) -> Result<TrajectoryRecord> {
    let stepper = Stepper::new(cfg, noise.clone())?;
    let steps = cfg.steps();
    if bm.len() < steps {
        return Err(Error::Config(format!(
            "Brownian path has {} increments, {} steps requested",
            bm.len(),
            steps
        )));
    }
    if (bm.dt() - cfg.dt).abs() > 1e-12 * cfg.dt {
        return Err(Error::Config(format!(
            "Brownian path step {} differs from dt = {}",
            bm.dt(),
            cfg.dt
        )));
    }
    let p = cfg.p;
    let mut state = SolverState {
        t: 0.0,
        u: project_initial(u0, cfg)?,
    };
    let mut phys = inverse_transform(&state.u);
    let mut norms = Norms::of(&state.u, &phys, p, options.gradient_energy)?;
    let mut monitor = StoppingMonitor::new(p, cfg.cutoff_m, 0.0, norms.lp);
    let mut record = TrajectoryRecord {
        dt: cfg.dt,
        p,
        rows: vec![norms.row(0.0, &monitor)],
        reason: StopReason::Horizon,
        stop_time: 0.0,
        states: Vec::new(),
    };
    if options.keep_states {
        record.states.push(state.u.clone());
    }
    for i in 0..steps {
        if monitor.has_fired() {
            record.reason = StopReason::Threshold;
            break;
        }
        let next = stepper.step_gated(&state, &phys, None, super::step::Gates::OPEN, &bm.increments()[i])?;
        if !next.u.is_finite() {
            record.reason = StopReason::BlowUp;
            break;
        }
        let next_phys = inverse_transform(&next.u);
        let next_norms = Norms::of(&next.u, &next_phys, p, options.gradient_energy)?;
        if !next_norms.is_finite() {
            record.reason = StopReason::BlowUp;
            break;
        }
        monitor.advance(cfg.dt, norms.l3p.powf(p), next_norms.lp);
        state = next;
        state.t = (i + 1) as f64 * cfg.dt;
        phys = next_phys;
        norms = next_norms;
        record.rows.push(norms.row(state.t, &monitor));
        if options.keep_states {
            record.states.push(state.u.clone());
        }
    }
    if monitor.has_fired() {
        record.reason = StopReason::Threshold;
    }
    record.stop_time = state.t;
    Ok(record)
}

struct Norms {
    l2: f64,
    grad_l2: f64,
    lp: f64,
    l3p: f64,
    energy_grad_p: f64,
}

impl Norms {
    fn of(u: &SpectralField, phys: &PhysicalField, p: f64, gradient: bool) -> Result<Self> {
        Ok(Self {
            l2: u.l2_norm(),
            grad_l2: u.grad_l2_norm(),
            lp: lp_norm_pow(phys, p)?.powf(1.0 / p),
            l3p: lp_norm_pow(phys, 3.0 * p)?.powf(1.0 / (3.0 * p)),
            energy_grad_p: if gradient {
                composite_gradient_energy(phys, p)?
            } else {
                f64::NAN
            },
        })
    }

    fn is_finite(&self) -> bool {
        self.l2.is_finite() && self.lp.is_finite() && self.l3p.is_finite()
    }

    fn row(&self, t: f64, monitor: &StoppingMonitor) -> TrajectoryRow {
        TrajectoryRow {
            t,
            l2: self.l2,
            grad_l2: self.grad_l2,
            lp: self.lp,
            l3p: self.l3p,
            energy_grad_p: self.energy_grad_p,
            monitor_stat: monitor.statistic(),
            stopped: monitor.has_fired(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseBasis;
    use crate::solver::initial::InitialCondition;

    fn cfg() -> SolverConfig {
        SolverConfig {
            horizon: 0.02,
            dt: 1e-3,
            ..SolverConfig::new(2, 4)
        }
    }

    #[test]
    fn zero_datum_zero_noise() {
        let c = cfg();
        let u0 = SpectralField::zeros(c.grid().unwrap(), 2);
        let noise = NoiseModel::zero(NoiseBasis::new(2, 4).unwrap());
        let rec = simulate_path(&c, &noise, &u0, 0, RecordOptions { gradient_energy: true, keep_states: true }).unwrap();
        assert_eq!(rec.rows.len(), 21);
        assert!(rec.rows.iter().all(|r| r.l2 == 0.0 && r.lp == 0.0 && r.energy_grad_p == 0.0));
        assert!(rec.states.iter().all(|s| s.max_abs() == 0.0));
        assert_eq!(rec.reason, StopReason::Horizon);
        assert!((rec.stop_time - 0.02).abs() < 1e-12);
    }

    #[test]
    fn deterministic_energy_decays() {
        let c = SolverConfig { horizon: 0.1, ..cfg() };
        let u0 = InitialCondition::TaylorGreen { amplitude: 3.0 }.build(c.grid().unwrap(), c.n).unwrap();
        let noise = NoiseModel::zero(NoiseBasis::new(2, 4).unwrap());
        let rec = simulate_path(&c, &noise, &u0, 0, RecordOptions::default()).unwrap();
        for w in rec.rows.windows(2) {
            assert!(w[1].l2 <= w[0].l2);
        }
    }

    #[test]
    fn reruns_are_bit_identical() {
        let c = SolverConfig { seed: 9, ..cfg() };
        let u0 = InitialCondition::RandomSpectrum { seed: 2, amplitude: 1.0, kmax: 6, decay: 1.5 }
            .build(c.grid().unwrap(), c.n)
            .unwrap();
        let noise = NoiseModel::linear(NoiseBasis::new(2, 8).unwrap(), 1.0, 1.0, true).unwrap();
        let opts = RecordOptions { gradient_energy: true, keep_states: true };
        let a = simulate_path(&c, &noise, &u0, 3, opts).unwrap();
        let b = simulate_path(&c, &noise, &u0, 3, opts).unwrap();
        assert_eq!(a, b);
        let other = simulate_path(&c, &noise, &u0, 4, opts).unwrap();
        assert_ne!(a.rows, other.rows);
    }

    #[test]
    fn threshold_below_initial_norm_stops_at_zero() {
        let c = SolverConfig { cutoff_m: 1e-3, ..cfg() };
        let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(c.grid().unwrap(), c.n).unwrap();
        let noise = NoiseModel::zero(NoiseBasis::new(2, 4).unwrap());
        let rec = simulate_path(&c, &noise, &u0, 0, RecordOptions::default()).unwrap();
        assert_eq!(rec.reason, StopReason::Threshold);
        assert_eq!(rec.stop_time, 0.0);
        assert_eq!(rec.rows.len(), 1);
    }

    #[test]
    fn truncation_matches_shorter_run() {
        let c = SolverConfig { seed: 1, ..cfg() };
        let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(c.grid().unwrap(), c.n).unwrap();
        let noise = NoiseModel::additive(NoiseBasis::new(2, 4).unwrap(), 1.0, 1.0).unwrap();
        let opts = RecordOptions { gradient_energy: true, keep_states: false };
        let long = simulate_path(&c, &noise, &u0, 0, opts).unwrap();
        let short = simulate_path(&SolverConfig { horizon: 0.01, ..c.clone() }, &noise, &u0, 0, opts).unwrap();
        assert_eq!(long.truncated(0.01), short);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let c = cfg();
        let u0 = SpectralField::zeros(c.grid().unwrap(), 2);
        let noise = NoiseModel::zero(NoiseBasis::new(2, 4).unwrap());
        let rec = simulate_path(&c, &noise, &u0, 0, RecordOptions::default()).unwrap();
        let mut buf = Vec::new();
        rec.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,l2,grad_l2,lp,l3p,energy_grad_p,monitor_stat,stopped\n"));
        assert_eq!(text.lines().count(), 22);
    }

    #[test]
    fn energy_functional_matches_rows() {
        let c = SolverConfig { horizon: 0.01, ..cfg() };
        let u0 = InitialCondition::TaylorGreen { amplitude: 1.0 }.build(c.grid().unwrap(), c.n).unwrap();
        let noise = NoiseModel::zero(NoiseBasis::new(2, 4).unwrap());
        let rec = simulate_path(&c, &noise, &u0, 0, RecordOptions::default()).unwrap();
        let expect = rec.rows[0].l2.powi(2)
            + rec.rows[..10].iter().map(|r| c.dt * r.grad_l2.powi(2)).sum::<f64>();
        assert!((rec.l2_energy() - expect).abs() < 1e-14 * expect);
    }
}
