//! Run configuration, command-line overrides and the run manifest.
//!
//! A run file is TOML with four optional sections. Every key has a default,
//! so an empty file is a valid configuration:
//!
//! ```toml
//! [grid]
//! dim = 2            # spatial dimension, 2 or 3 for simulations
//! n = 8              # square truncation index
//! points = 34        # lattice points per axis, default 4n + 2
//!
//! [solver]
//! dt = 1e-3
//! horizon = 0.5
//! p = 4.0
//! cutoff_m = 5.0     # omitted: 2 sup_n ‖S_n u0‖_p + 1 over the truncation list
//! seed = 0
//! scheme = "exponential_em"
//! nonlinear = true
//! paths = 16
//! initial = { kind = "taylor_green", amplitude = 1.0 }
//!
//! [noise]
//! variant = "linear" # zero | additive | linear
//! modes = 16
//! c0 = 0.5
//! beta = 1.0
//! projected = true
//!
//! [diagnostics]
//! truncations = [8, 16, 32]
//! horizons = [0.2, 0.1, 0.05]
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::noise::{NoiseBasis, NoiseModel, NoiseVariant};
use crate::solver::{InitialCondition, Scheme, SolverConfig};

/// Environment variable naming the default output root.
pub const OUT_ENV: &str = "SNSE_OUT";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub dim: usize,
    pub n: usize,
    pub points: Option<usize>,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { dim: 2, n: 8, points: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub dt: f64,
    pub horizon: f64,
    pub p: f64,
    pub cutoff_m: Option<f64>,
    pub seed: u64,
    pub scheme: Scheme,
    pub nonlinear: bool,
    pub paths: usize,
    pub initial: InitialCondition,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            horizon: 0.5,
            p: 4.0,
            cutoff_m: None,
            seed: 0,
            scheme: Scheme::ExponentialEm,
            nonlinear: true,
            paths: 16,
            initial: InitialCondition::TaylorGreen { amplitude: 1.0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSection {
    pub variant: NoiseVariant,
    /// Number of basis functions `K`.
    pub modes: usize,
    pub c0: f64,
    pub beta: f64,
    /// Leray-project `ψ_k u` in the linear model.
    pub projected: bool,
}

impl Default for NoiseSection {
    fn default() -> Self {
        Self {
            variant: NoiseVariant::Linear,
            modes: 16,
            c0: 0.5,
            beta: 1.0,
            projected: true,
        }
    }
}

/// Parameters of the verification studies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiagnosticsSection {
    /// Dimensions of the operator identity suite.
    pub identity_dims: Vec<usize>,
    pub identity_fields: usize,
    pub identity_tolerance: f64,
    pub cancellation_pairs: usize,
    pub cancellation_tolerance: f64,
    /// Exponents of the partial-sum studies.
    pub q_values: Vec<f64>,
    pub ladder: Vec<usize>,
    pub decay_fields: usize,
    pub decay_eps: f64,
    pub uniform_fields: usize,
    pub gn_fields: usize,
    pub gn_points: usize,
    pub gn_band: usize,
    /// Truncation list of the ensemble and Cauchy studies.
    pub truncations: Vec<usize>,
    /// Horizons of the tail study.
    pub horizons: Vec<f64>,
    /// Size of the assumption-checker corpus.
    pub assumption_fields: usize,
}

impl Default for DiagnosticsSection {
    fn default() -> Self {
        Self {
            identity_dims: vec![1, 2, 3],
            identity_fields: 50,
            identity_tolerance: 1e-10,
            cancellation_pairs: 20,
            cancellation_tolerance: 1e-8,
            q_values: vec![2.0, 4.0],
            ladder: vec![4, 8, 16, 32, 64],
            decay_fields: 20,
            decay_eps: 0.5,
            uniform_fields: 100,
            gn_fields: 100,
            gn_points: 32,
            gn_band: 2,
            truncations: vec![8, 16, 32],
            horizons: vec![0.2, 0.1, 0.05],
            assumption_fields: 8,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridSection,
    pub solver: SolverSection,
    pub noise: NoiseSection,
    pub diagnostics: DiagnosticsSection,
}

/// Values given on the command line; each replaces its file counterpart.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub points: Option<usize>,
    pub dt: Option<f64>,
    pub horizon: Option<f64>,
    pub p: Option<f64>,
    pub cutoff_m: Option<f64>,
    pub noise: Option<NoiseVariant>,
    pub paths: Option<usize>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    /// Canonical TOML rendering; the manifest hash is taken over it.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.seed {
            self.solver.seed = v;
        }
        if let Some(v) = o.n {
            self.grid.n = v;
        }
        if let Some(v) = o.points {
            self.grid.points = Some(v);
        }
        if let Some(v) = o.dt {
            self.solver.dt = v;
        }
        if let Some(v) = o.horizon {
            self.solver.horizon = v;
        }
        if let Some(v) = o.p {
            self.solver.p = v;
        }
        if let Some(v) = o.cutoff_m {
            self.solver.cutoff_m = Some(v);
        }
        if let Some(v) = &o.noise {
            self.noise.variant = v.clone();
        }
        if let Some(v) = o.paths {
            self.solver.paths = v;
        }
    }

    /// Stopping level: the configured value, or `2 sup_n ‖S_n u0‖_p + 1`
    /// over `n` and the diagnostics truncations.
    pub fn cutoff_level(&self) -> Result<f64> {
        if let Some(m) = self.solver.cutoff_m {
            return Ok(m);
        }
        let mut ns = self.diagnostics.truncations.clone();
        ns.push(self.grid.n);
        self.solver.initial.cutoff_level(self.grid.dim, &ns, self.solver.p)
    }

    /// Validated solver parameters.
    pub fn solver_config(&self) -> Result<SolverConfig> {
        let n = self.grid.n;
        let cfg = SolverConfig {
            dim: self.grid.dim,
            n,
            points: self.grid.points.unwrap_or(4 * n + 2),
            dt: self.solver.dt,
            horizon: self.solver.horizon,
            p: self.solver.p,
            cutoff_m: self.cutoff_level()?,
            seed: self.solver.seed,
            scheme: self.solver.scheme,
            nonlinear: self.solver.nonlinear,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn noise_model(&self) -> Result<NoiseModel> {
        let s = &self.noise;
        let basis = NoiseBasis::new(self.grid.dim, s.modes.max(1))?;
        match s.variant {
            NoiseVariant::Zero => Ok(NoiseModel::zero(basis)),
            NoiseVariant::Additive => NoiseModel::additive(basis, s.c0, s.beta),
            NoiseVariant::Linear => NoiseModel::linear(basis, s.c0, s.beta, s.projected),
        }
    }

    /// Hex SHA-256 of the git blob framing of [`Self::to_toml`].
    pub fn content_hash(&self) -> Result<String> {
        let text = self.to_toml()?;
        let mut h = Sha256::new();
        h.update(format!("blob {}\0", text.len()).as_bytes());
        h.update(text.as_bytes());
        Ok(hex::encode(h.finalize()))
    }
}

/// Record of one command invocation, written before it computes anything.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: Option<PathBuf>,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
    pub config_hash: String,
    pub config: RunConfig,
}

impl RunManifest {
    /// Chooses `root/<first 16 hex digits>` as the output directory.
    pub fn new(command: &str, config: &RunConfig, config_path: Option<&Path>, root: &Path) -> Result<Self> {
        let hash = config.content_hash()?;
        Ok(Self {
            command: command.to_owned(),
            config_path: config_path.map(Path::to_path_buf),
            seeds: vec![config.solver.seed],
            output_dir: root.join(&hash[..16]),
            config_hash: hash,
            config: config.clone(),
        })
    }

    /// Creates `reports/`, `data/` and `fields/` and writes
    /// `manifest-<command>.json`.
    pub fn write(&self) -> Result<()> {
        for sub in ["reports", "data", "fields"] {
            fs::create_dir_all(self.output_dir.join(sub))?;
        }
        let file = fs::File::create(self.output_dir.join(format!("manifest-{}.json", self.command)))?;
        serde_json::to_writer_pretty(file, self)?;
        Ok(())
    }

    pub fn reports_dir(&self) -> PathBuf {
        self.output_dir.join("reports")
    }

    pub fn data_dir(&self) -> PathBuf {
        self.output_dir.join("data")
    }

    pub fn fields_dir(&self) -> PathBuf {
        self.output_dir.join("fields")
    }
}

/// `--out` if given, else `$SNSE_OUT`, else `out`.
pub fn output_root(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_default() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn round_trip_and_unknown_keys() {
        let text = "[grid]\nn = 4\n[solver]\ninitial = { kind = \"zero\" }\n[noise]\nvariant = \"zero\"\n";
        let cfg = RunConfig::from_toml(text).unwrap();
        assert_eq!(cfg.grid.n, 4);
        assert_eq!(cfg.noise.variant, NoiseVariant::Zero);
        assert_eq!(RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg);
        assert!(RunConfig::from_toml("[grid]\nsize = 3\n").is_err());
    }

    #[test]
    fn overrides_replace_file_values() {
        let mut cfg = RunConfig::default();
        let before = cfg.content_hash().unwrap();
        cfg.apply(&Overrides { seed: Some(9), points: Some(40), noise: Some(NoiseVariant::Additive), ..Default::default() });
        assert_eq!(cfg.solver.seed, 9);
        assert_eq!(cfg.solver_config().unwrap().points, 40);
        assert_eq!(cfg.noise_model().unwrap().name(), "additive");
        assert_ne!(cfg.content_hash().unwrap(), before);
    }

    #[test]
    fn hash_is_stable_and_git_framed() {
        let cfg = RunConfig::default();
        let text = cfg.to_toml().unwrap();
        let expect = hex::encode(Sha256::digest(format!("blob {}\0{}", text.len(), text).as_bytes()));
        assert_eq!(cfg.content_hash().unwrap(), expect);
        assert_eq!(cfg.content_hash().unwrap(), RunConfig::default().content_hash().unwrap());
    }

    #[test]
    fn aliasing_grid_rejected() {
        let mut cfg = RunConfig::default();
        cfg.apply(&Overrides { points: Some(4 * cfg.grid.n), ..Default::default() });
        assert!(matches!(cfg.solver_config(), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn default_cutoff_uses_initial_datum() {
        let cfg = RunConfig::default();
        let m = cfg.cutoff_level().unwrap();
        let direct = cfg.solver.initial.cutoff_level(2, &[8, 16, 32, 8], 4.0).unwrap();
        assert_eq!(m, direct);
        assert!(m > 1.0);
    }
}
