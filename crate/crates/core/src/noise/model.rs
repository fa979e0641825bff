use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::basis::NoiseBasis;
use super::increment::WienerIncrement;
use crate::error::{Error, Result};
use crate::fourier::ops::leray_project_unchecked;
use crate::fourier::{
    forward_transform, inverse_transform, pointwise_product, PhysicalField, SpectralField,
};

/// User-supplied noise coefficient `u ↦ (σ(u)e_k)_k`.
pub trait NoiseCoefficient: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Number of basis modes the coefficient acts on.
    fn mode_count(&self) -> usize;

    fn apply(&self, u: &SpectralField) -> Result<Vec<SpectralField>>;
}

#[derive(Clone, Debug)]
pub enum NoiseKind {
    Zero,
    /// `σ(u)e_k = c_k ψ_k ê_k`, independent of `u`.
    Additive { coeffs: Vec<f64> },
    /// `σ(u)e_k = c_k 𝒫(ψ_k u)` when `projected`, else `c_k u`.
    LinearDiagonal { coeffs: Vec<f64>, projected: bool },
    Custom(Arc<dyn NoiseCoefficient>),
}

/// Serializable description of a built-in model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseVariant {
    Zero,
    Additive,
    Linear,
}

impl std::str::FromStr for NoiseVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Self::Zero),
            "additive" => Ok(Self::Additive),
            "linear" | "linear_diagonal" => Ok(Self::Linear),
            other => Err(Error::Config(format!("unknown noise variant '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NoiseModel {
    basis: NoiseBasis,
    kind: NoiseKind,
}

/// `c_k = c0 · k^{-β}` for `k = 1..=count`.
pub fn decaying_coefficients(count: usize, c0: f64, beta: f64) -> Result<Vec<f64>> {
    if !(beta > 0.5) {
        return Err(Error::Config(format!(
            "coefficient decay beta = {beta} must exceed 1/2 for finite Hilbert-Schmidt mass"
        )));
    }
    Ok((1..=count).map(|k| c0 * (k as f64).powf(-beta)).collect())
}

/// `Σ_{k>count} (c0 k^{-β})²`, by direct summation plus a midpoint-rule tail.
pub fn coefficient_tail(count: usize, c0: f64, beta: f64) -> f64 {
    let direct = 100_000;
    let s = 2.0 * beta;
    let mut sum = 0.0;
    for k in (count + 1..=count + direct).rev() {
        sum += (k as f64).powf(-s);
    }
    let start = (count + direct) as f64 + 0.5;
    sum += start.powf(1.0 - s) / (s - 1.0);
    c0 * c0 * sum
}

impl NoiseModel {
    pub fn zero(basis: NoiseBasis) -> Self {
        Self {
            basis,
            kind: NoiseKind::Zero,
        }
    }

    pub fn additive(basis: NoiseBasis, c0: f64, beta: f64) -> Result<Self> {
        let coeffs = decaying_coefficients(basis.len(), c0, beta)?;
        Ok(Self {
            basis,
            kind: NoiseKind::Additive { coeffs },
        })
    }

    pub fn linear(basis: NoiseBasis, c0: f64, beta: f64, projected: bool) -> Result<Self> {
        let coeffs = decaying_coefficients(basis.len(), c0, beta)?;
        Ok(Self {
            basis,
            kind: NoiseKind::LinearDiagonal { coeffs, projected },
        })
    }

    pub fn custom(basis: NoiseBasis, coefficient: Arc<dyn NoiseCoefficient>) -> Result<Self> {
        if coefficient.mode_count() != basis.len() {
            return Err(Error::Config(format!(
                "custom noise acts on {} modes but the basis has {}",
                coefficient.mode_count(),
                basis.len()
            )));
        }
        Ok(Self {
            basis,
            kind: NoiseKind::Custom(coefficient),
        })
    }

    pub fn basis(&self) -> &NoiseBasis {
        &self.basis
    }

    pub fn kind(&self) -> &NoiseKind {
        &self.kind
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, NoiseKind::Zero)
    }

    pub fn name(&self) -> String {
        match &self.kind {
            NoiseKind::Zero => "zero".into(),
            NoiseKind::Additive { .. } => "additive".into(),
            NoiseKind::LinearDiagonal { projected: true, .. } => "linear_projected".into(),
            NoiseKind::LinearDiagonal { projected: false, .. } => "linear".into(),
            NoiseKind::Custom(c) => c.name().to_string(),
        }
    }

    pub fn coefficients(&self) -> Option<&[f64]> {
        match &self.kind {
            NoiseKind::Additive { coeffs } | NoiseKind::LinearDiagonal { coeffs, .. } => {
                Some(coeffs)
            }
            _ => None,
        }
    }

    /// `Σ_k c_k²` over the retained modes.
    pub fn hilbert_schmidt_mass(&self) -> f64 {
        self.coefficients()
            .map(|c| c.iter().map(|x| x * x).sum())
            .unwrap_or(0.0)
    }

    /// `σ(u)e_k` for every retained mode `k`.
    pub fn apply_sigma(&self, u: &SpectralField) -> Result<Vec<SpectralField>> {
        let grid = u.grid();
        let k = self.basis.len();
        match &self.kind {
            NoiseKind::Zero => Ok(vec![SpectralField::zeros(grid, u.ncomp()); k]),
            NoiseKind::Additive { coeffs } => Ok(coeffs
                .iter()
                .enumerate()
                .map(|(m, &c)| self.basis.solenoidal_shape(m, grid).scale(c))
                .collect()),
            NoiseKind::LinearDiagonal {
                coeffs,
                projected: false,
            } => Ok(coeffs.iter().map(|&c| u.scale(c)).collect()),
            NoiseKind::LinearDiagonal {
                coeffs,
                projected: true,
            } => {
                let phys = inverse_transform(u);
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(m, &c)| {
                        let psi = inverse_transform(&self.basis.shape(m, grid));
                        let prod = forward_transform(&pointwise_product(&psi, &phys)?);
                        Ok(leray_project_unchecked(&prod).scale(c))
                    })
                    .collect()
            }
            NoiseKind::Custom(coef) => coef.apply(u),
        }
    }

    /// Noise forcing `Σ_k σ(u)e_k ΔW_k` for one step.
    ///
    /// `u_phys` must be the lattice samples of `u`.
    pub fn forcing(
        &self,
        u: &SpectralField,
        u_phys: &PhysicalField,
        dw: &WienerIncrement,
    ) -> Result<SpectralField> {
        let grid = u.grid();
        if dw.values.len() != self.basis.len() {
            return Err(Error::ShapeMismatch(format!(
                "increment has {} modes, basis has {}",
                dw.values.len(),
                self.basis.len()
            )));
        }
        match &self.kind {
            NoiseKind::Zero => Ok(SpectralField::zeros(grid, u.ncomp())),
            NoiseKind::Additive { coeffs } => {
                let mut out = SpectralField::zeros(grid, u.ncomp());
                for (m, (&c, &w)) in coeffs.iter().zip(&dw.values).enumerate() {
                    out.axpy(c * w, &self.basis.solenoidal_shape(m, grid))?;
                }
                Ok(out)
            }
            NoiseKind::LinearDiagonal {
                coeffs,
                projected: false,
            } => {
                let s: f64 = coeffs.iter().zip(&dw.values).map(|(c, w)| c * w).sum();
                Ok(u.scale(s))
            }
            NoiseKind::LinearDiagonal {
                coeffs,
                projected: true,
            } => {
                // Σ_k c_k ΔW_k 𝒫(ψ_k u) = 𝒫(η u) with η = Σ_k c_k ΔW_k ψ_k
                let mut eta = SpectralField::zeros(grid, 1);
                for (m, (&c, &w)) in coeffs.iter().zip(&dw.values).enumerate() {
                    eta.axpy(c * w, &self.basis.shape(m, grid))?;
                }
                let prod = pointwise_product(&inverse_transform(&eta), u_phys)?;
                Ok(leray_project_unchecked(&forward_transform(&prod)))
            }
            NoiseKind::Custom(coef) => {
                let fields = coef.apply(u)?;
                let mut out = SpectralField::zeros(grid, u.ncomp());
                for (f, &w) in fields.iter().zip(&dw.values) {
                    out.axpy(w, f)?;
                }
                Ok(out)
            }
        }
    }
}
