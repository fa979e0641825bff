use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use super::basis::NoiseBasis;
use crate::error::{Error, Result};

/// Increments `ΔW_k` of the truncated cylindrical Wiener process over one step.
#[derive(Clone, Debug, PartialEq)]
pub struct WienerIncrement {
    pub dt: f64,
    pub values: Vec<f64>,
}

impl WienerIncrement {
    pub fn zero(modes: usize, dt: f64) -> Self {
        Self {
            dt,
            values: vec![0.0; modes],
        }
    }
}

/// Draws `K` independent `N(0, dt)` increments.
pub fn sample_increment<R: Rng + ?Sized>(
    basis: &NoiseBasis,
    dt: f64,
    rng: &mut R,
) -> Result<WienerIncrement> {
    if dt < 0.0 || dt.is_nan() {
        return Err(Error::NegativeTimeStep(dt));
    }
    let scale = dt.sqrt();
    let values = (0..basis.len())
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Ok(WienerIncrement { dt, values })
}

/// Generator for path `path` of a run seeded with `seed`.
///
/// Paths use distinct ChaCha streams of one key, so they never overlap.
pub fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

/// Pre-drawn increment sequence on a uniform time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BrownianPath {
    dt: f64,
    increments: Vec<WienerIncrement>,
}

impl BrownianPath {
    pub fn generate<R: Rng + ?Sized>(
        basis: &NoiseBasis,
        dt: f64,
        steps: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let increments = (0..steps)
            .map(|_| sample_increment(basis, dt, rng))
            .collect::<Result<_>>()?;
        Ok(Self { dt, increments })
    }

    pub fn from_increments(dt: f64, increments: Vec<WienerIncrement>) -> Self {
        Self { dt, increments }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn increments(&self) -> &[WienerIncrement] {
        &self.increments
    }

    pub fn get(&self, step: usize) -> Option<&WienerIncrement> {
        self.increments.get(step)
    }

    /// Sums blocks of `factor` increments: the same Brownian path seen on a
    /// grid `factor` times coarser.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || self.increments.len() % factor != 0 {
            return Err(Error::Config(format!(
                "cannot coarsen {} increments by {factor}",
                self.increments.len()
            )));
        }
        let dt = self.dt * factor as f64;
        let increments = self
            .increments
            .chunks(factor)
            .map(|block| {
                let mut values = vec![0.0; block[0].values.len()];
                for inc in block {
                    for (v, w) in values.iter_mut().zip(&inc.values) {
                        *v += w;
                    }
                }
                WienerIncrement { dt, values }
            })
            .collect();
        Ok(Self { dt, increments })
    }
}
