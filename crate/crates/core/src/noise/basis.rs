use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{Grid, SpectralField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Cos,
    Sin,
}

/// One basis direction: `√2 cos(2πκ·x)` or `√2 sin(2πκ·x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisMode {
    pub wavevector: [i64; 3],
    pub parity: Parity,
}

/// Truncated orthonormal basis `{e_k}` of the noise Hilbert space.
///
/// Modes are real Fourier modes ordered by `|κ|²`, then lexicographically,
/// cosine before sine. Each shape is mean-zero with unit L² norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseBasis {
    dim: usize,
    modes: Vec<BasisMode>,
}

impl NoiseBasis {
    pub fn new(dim: usize, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Config("noise basis needs at least one mode".into()));
        }
        if !(1..=3).contains(&dim) {
            return Err(Error::Config(format!("invalid dimension {dim}")));
        }
        let mut modes = Vec::with_capacity(count);
        let mut radius = 1i64;
        while modes.len() < count {
            let mut shell: Vec<[i64; 3]> = half_space(dim, radius)
                .into_iter()
                .filter(|k| {
                    let k2: i64 = k.iter().map(|x| x * x).sum();
                    k2 > (radius - 1) * (radius - 1) && k2 <= radius * radius
                })
                .collect();
            shell.sort_by_key(|k| (k.iter().map(|x| x * x).sum::<i64>(), *k));
            for k in shell {
                for parity in [Parity::Cos, Parity::Sin] {
                    if modes.len() < count {
                        modes.push(BasisMode { wavevector: k, parity });
                    }
                }
            }
            radius += 1;
        }
        Ok(Self { dim, modes })
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> &[BasisMode] {
        &self.modes
    }

    /// Largest `|κ_i|` over the basis.
    pub fn max_wavenumber(&self) -> usize {
        self.modes
            .iter()
            .flat_map(|m| m.wavevector.iter())
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Scalar shape `ψ_k` as a spectral field on `grid`.
    pub fn shape(&self, k: usize, grid: Grid) -> SpectralField {
        let mode = self.modes[k];
        let mut f = SpectralField::zeros(grid, 1);
        let value = match mode.parity {
            Parity::Cos => Complex64::new(FRAC_1_SQRT_2, 0.0),
            Parity::Sin => Complex64::new(0.0, -FRAC_1_SQRT_2),
        };
        f.set_mode(0, &mode.wavevector[..grid.dim()], value);
        f
    }

    /// Unit polarization perpendicular to `κ` (zero in one dimension).
    pub fn polarization(&self, k: usize) -> [f64; 3] {
        let kv = self.modes[k].wavevector.map(|x| x as f64);
        match self.dim {
            1 => [0.0; 3],
            2 => {
                let n = (kv[0] * kv[0] + kv[1] * kv[1]).sqrt();
                [-kv[1] / n, kv[0] / n, 0.0]
            }
            _ => {
                let a = if kv[0] == 0.0 && kv[1] == 0.0 {
                    [1.0, 0.0, 0.0]
                } else {
                    [0.0, 0.0, 1.0]
                };
                let c = [
                    kv[1] * a[2] - kv[2] * a[1],
                    kv[2] * a[0] - kv[0] * a[2],
                    kv[0] * a[1] - kv[1] * a[0],
                ];
                let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
                [c[0] / n, c[1] / n, c[2] / n]
            }
        }
    }

    /// Divergence-free vector shape `ψ_k ê_k` with `ê_k ⟂ κ_k`.
    pub fn solenoidal_shape(&self, k: usize, grid: Grid) -> SpectralField {
        let scalar = self.shape(k, grid);
        let e = self.polarization(k);
        let parts: Vec<SpectralField> = (0..grid.dim()).map(|j| scalar.scale(e[j])).collect();
        SpectralField::stack(&parts).expect("same grid")
    }
}

/// Nonzero wavevectors with max-norm at most `r` in the half-space `k > 0`
/// (first nonzero component positive).
fn half_space(dim: usize, r: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    let range = -r..=r;
    for a in range.clone() {
        for b in if dim >= 2 { range.clone() } else { 0..=0 } {
            for c in if dim >= 3 { range.clone() } else { 0..=0 } {
                let k = [a, b, c];
                let first = k.iter().find(|&&x| x != 0);
                if matches!(first, Some(&x) if x > 0) {
                    out.push(k);
                }
            }
        }
    }
    out
}
