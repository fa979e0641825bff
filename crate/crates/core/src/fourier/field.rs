use num_complex::Complex64;

use super::grid::{Grid, MultiIndex};
use crate::error::{Error, Result};

/// Fourier coefficients of a real scalar or vector field on the torus.
///
/// Coefficients follow the integral normalization
/// `f̂(k) = ∫ f(x) e^{-2πi k·x} dx`, stored per component in the FFT layout
/// of [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    components: Vec<Vec<Complex64>>,
}

/// Real samples of a scalar or vector field on the lattice of a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalField {
    grid: Grid,
    components: Vec<Vec<f64>>,
}

impl SpectralField {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        Self {
            grid,
            components: vec![vec![Complex64::new(0.0, 0.0); grid.len()]; ncomp],
        }
    }

    pub fn from_components(grid: Grid, components: Vec<Vec<Complex64>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty("field components"));
        }
        if let Some(c) = components.iter().find(|c| c.len() != grid.len()) {
            return Err(Error::ShapeMismatch(format!(
                "component has {} coefficients, grid needs {}",
                c.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, components })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, j: usize) -> &[Complex64] {
        &self.components[j]
    }

    pub fn component_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.components[j]
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Vec<Complex64>> {
        self.components
    }

    /// Single component as a scalar field.
    pub fn extract(&self, j: usize) -> SpectralField {
        Self {
            grid: self.grid,
            components: vec![self.components[j].clone()],
        }
    }

    /// Stacks scalar fields into one vector field.
    pub fn stack(fields: &[SpectralField]) -> Result<Self> {
        let first = fields.first().ok_or(Error::Empty("fields to stack"))?;
        let mut components = Vec::new();
        for f in fields {
            first.check_same_grid(f)?;
            components.extend(f.components.iter().cloned());
        }
        Ok(Self {
            grid: first.grid,
            components,
        })
    }

    pub fn coefficient(&self, j: usize, k: &[i64]) -> Complex64 {
        self.grid
            .flat_index(k)
            .map(|i| self.components[j][i])
            .unwrap_or_default()
    }

    /// Sets `û_j(k) = value` and `û_j(-k) = conj(value)`.
    pub fn set_mode(&mut self, j: usize, k: &[i64], value: Complex64) {
        if let Some(i) = self.grid.flat_index(k) {
            let c = self.grid.conjugate_index(i);
            if c == i {
                self.components[j][i] = Complex64::new(value.re, 0.0);
            } else {
                self.components[j][i] = value;
                self.components[j][c] = value.conj();
            }
        }
    }

    pub fn check_same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::ShapeMismatch(format!(
                "grids differ: {:?} vs {:?}",
                self.grid, other.grid
            )));
        }
        Ok(())
    }

    pub fn check_same_shape(&self, other: &SpectralField) -> Result<()> {
        self.check_same_grid(other)?;
        if self.ncomp() != other.ncomp() {
            return Err(Error::ShapeMismatch(format!(
                "component counts differ: {} vs {}",
                self.ncomp(),
                other.ncomp()
            )));
        }
        Ok(())
    }

    /// Mean of each component, `û_j(0)`.
    pub fn mean(&self) -> Vec<Complex64> {
        self.components.iter().map(|c| c[0]).collect()
    }

    pub fn mean_magnitude(&self) -> f64 {
        self.mean().iter().map(|m| m.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Mean-zero test with tolerance relative to the field's L² norm.
    pub fn is_mean_zero(&self, rel_tol: f64) -> bool {
        self.mean_magnitude() <= rel_tol * self.l2_norm().max(1.0)
    }

    pub fn require_mean_zero(&self) -> Result<()> {
        if self.is_mean_zero(1e-12) {
            Ok(())
        } else {
            Err(Error::NonzeroMean(self.mean_magnitude()))
        }
    }

    pub fn remove_mean(&mut self) {
        for c in &mut self.components {
            c[0] = Complex64::new(0.0, 0.0);
        }
    }

    /// Restores Hermitian symmetry `û(-k) = conj(û(k))` by averaging partners.
    pub fn symmetrize(&mut self) {
        let grid = self.grid;
        for c in &mut self.components {
            for i in 0..c.len() {
                let p = grid.conjugate_index(i);
                if p < i {
                    continue;
                }
                if p == i {
                    c[i] = Complex64::new(c[i].re, 0.0);
                } else {
                    let avg = 0.5 * (c[i] + c[p].conj());
                    c[i] = avg;
                    c[p] = avg.conj();
                }
            }
        }
    }

    /// Largest violation of Hermitian symmetry over all coefficients.
    pub fn hermitian_defect(&self) -> f64 {
        let grid = self.grid;
        let mut worst: f64 = 0.0;
        for c in &self.components {
            for i in 0..c.len() {
                let p = grid.conjugate_index(i);
                worst = worst.max((c[i] - c[p].conj()).norm());
            }
        }
        worst
    }

    /// Applies a per-mode scalar multiplier to every component.
    pub fn map_multiplier<F>(&self, mut symbol: F) -> SpectralField
    where
        F: FnMut(&[i64; 3]) -> Complex64,
    {
        let grid = self.grid;
        let mut out = self.clone();
        for i in 0..grid.len() {
            let m = symbol(&grid.mode(i));
            for c in &mut out.components {
                c[i] *= m;
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> SpectralField {
        let mut out = self.clone();
        out.scale_mut(factor);
        out
    }

    pub fn scale_mut(&mut self, factor: f64) {
        for c in &mut self.components {
            for z in c.iter_mut() {
                *z *= factor;
            }
        }
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: f64, other: &SpectralField) -> Result<()> {
        self.check_same_shape(other)?;
        for (c, o) in self.components.iter_mut().zip(&other.components) {
            for (z, w) in c.iter_mut().zip(o) {
                *z += a * w;
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &SpectralField) -> Result<SpectralField> {
        let mut out = self.clone();
        out.axpy(1.0, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        let mut out = self.clone();
        out.axpy(-1.0, other)?;
        Ok(out)
    }

    /// `∫ u·v dx` via Parseval.
    pub fn inner(&self, other: &SpectralField) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut acc = 0.0;
        for (c, o) in self.components.iter().zip(&other.components) {
            for (z, w) in c.iter().zip(o) {
                acc += (z * w.conj()).re;
            }
        }
        Ok(acc)
    }

    /// L² norm via Parseval.
    pub fn l2_norm(&self) -> f64 {
        self.components
            .iter()
            .flat_map(|c| c.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖∇u‖₂` via Parseval.
    pub fn grad_l2_norm(&self) -> f64 {
        let grid = self.grid;
        let two_pi_sq = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        let mut acc = 0.0;
        for c in &self.components {
            for (i, z) in c.iter().enumerate() {
                acc += two_pi_sq * grid.mode_norm_sq(i) * z.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &SpectralField) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .flat_map(|(c, o)| c.iter().zip(o))
            .fold(0.0, |m, (z, w)| m.max((z - w).norm())))
    }

    /// True when every coefficient outside the box `|k_i| <= n_i` vanishes.
    pub fn is_supported_in(&self, n: &MultiIndex) -> bool {
        let grid = self.grid;
        (0..grid.len()).all(|i| {
            n.contains(&grid.mode(i)) || self.components.iter().all(|c| c[i] == Complex64::default())
        })
    }

    pub fn is_finite(&self) -> bool {
        self.components
            .iter()
            .flat_map(|c| c.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Copies the coefficients onto another grid of the same dimension.
    ///
    /// Modes on the Nyquist index of either grid are dropped, as are modes not
    /// representable on the target.
    pub fn resample(&self, target: Grid) -> Result<SpectralField> {
        if target.dim() != self.grid.dim() {
            return Err(Error::ShapeMismatch(format!(
                "cannot resample {}-d field onto {}-d grid",
                self.grid.dim(),
                target.dim()
            )));
        }
        let mut out = SpectralField::zeros(target, self.ncomp());
        for i in 0..self.grid.len() {
            let k = self.grid.mode(i);
            if self.grid.is_nyquist(&k) {
                continue;
            }
            if let Some(t) = target.flat_index(&k) {
                if target.is_nyquist(&k) {
                    continue;
                }
                for (dst, src) in out.components.iter_mut().zip(&self.components) {
                    dst[t] = src[i];
                }
            }
        }
        Ok(out)
    }
}

impl PhysicalField {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        Self {
            grid,
            components: vec![vec![0.0; grid.len()]; ncomp],
        }
    }

    pub fn from_components(grid: Grid, components: Vec<Vec<f64>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty("field components"));
        }
        if let Some(c) = components.iter().find(|c| c.len() != grid.len()) {
            return Err(Error::ShapeMismatch(format!(
                "component has {} samples, grid needs {}",
                c.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, components })
    }

    /// Samples `f(x)` at every lattice point; `f` writes `ncomp` values.
    pub fn sample<F>(grid: Grid, ncomp: usize, mut f: F) -> Self
    where
        F: FnMut(&[f64; 3], &mut [f64]),
    {
        let mut components = vec![vec![0.0; grid.len()]; ncomp];
        let mut buf = vec![0.0; ncomp];
        for i in 0..grid.len() {
            f(&grid.coordinates(i), &mut buf);
            for (c, v) in components.iter_mut().zip(&buf) {
                c[i] = *v;
            }
        }
        Self { grid, components }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, j: usize) -> &[f64] {
        &self.components[j]
    }

    pub fn component_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.components[j]
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Vec<f64>> {
        self.components
    }

    /// Pointwise Euclidean magnitude over components.
    pub fn magnitude(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.grid.len()];
        for c in &self.components {
            for (o, v) in out.iter_mut().zip(c) {
                *o += v * v;
            }
        }
        out.iter_mut().for_each(|o| *o = o.sqrt());
        out
    }

    pub fn max_abs_diff(&self, other: &PhysicalField) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .flat_map(|(c, o)| c.iter().zip(o))
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_mode_keeps_hermitian() {
        let g = Grid::new(2, 8).unwrap();
        let mut f = SpectralField::zeros(g, 1);
        f.set_mode(0, &[1, -2], Complex64::new(0.3, 0.7));
        assert_eq!(f.coefficient(0, &[-1, 2]), Complex64::new(0.3, -0.7));
        assert_eq!(f.hermitian_defect(), 0.0);
    }

    #[test]
    fn symmetrize_projects_onto_real_fields() {
        let g = Grid::new(1, 8).unwrap();
        let mut f = SpectralField::zeros(g, 1);
        f.component_mut(0)[1] = Complex64::new(1.0, 1.0);
        f.component_mut(0)[4] = Complex64::new(2.0, 3.0);
        f.symmetrize();
        assert!(f.hermitian_defect() < 1e-15);
        assert_eq!(f.coefficient(0, &[1]), Complex64::new(0.5, 0.5));
        assert_eq!(f.coefficient(0, &[-4]), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn resample_preserves_shared_modes() {
        let g = Grid::new(2, 8).unwrap();
        let big = Grid::new(2, 16).unwrap();
        let mut f = SpectralField::zeros(g, 2);
        f.set_mode(0, &[2, -3], Complex64::new(1.0, -0.5));
        f.set_mode(1, &[-4, 1], Complex64::new(1.0, 0.0));
        let up = f.resample(big).unwrap();
        assert_eq!(up.coefficient(0, &[2, -3]), Complex64::new(1.0, -0.5));
        // Nyquist on the source grid is dropped.
        assert_eq!(up.coefficient(1, &[-4, 1]), Complex64::default());
        let back = up.resample(g).unwrap();
        assert_eq!(back.coefficient(0, &[-2, 3]), Complex64::new(1.0, 0.5));
    }

    #[test]
    fn parseval_quantities() {
        let g = Grid::new(1, 16).unwrap();
        let mut f = SpectralField::zeros(g, 1);
        f.set_mode(0, &[3], Complex64::new(0.5, 0.0));
        assert!((f.l2_norm() - 0.5f64.sqrt()).abs() < 1e-15);
        let expected = 2.0 * std::f64::consts::PI * 3.0 * 0.5f64.sqrt();
        assert!((f.grad_l2_norm() - expected).abs() < 1e-12);
        assert!((f.inner(&f).unwrap() - 0.5).abs() < 1e-15);
    }
}
