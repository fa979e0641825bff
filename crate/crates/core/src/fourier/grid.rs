use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform lattice on the periodic cube `[0,1]^d` with `points` samples per axis.
///
/// Flat indices are row-major with axis 0 slowest. Index `j` along an axis
/// carries wavenumber `j` for `j < N/2` and `j - N` otherwise, so the Nyquist
/// index maps to `-N/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    points: usize,
}

impl Grid {
    pub fn new(dim: usize, points: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!(
                "dimension must be 1, 2 or 3, got {dim}"
            )));
        }
        if points < 4 || points % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be even and >= 4, got {points}"
            )));
        }
        Ok(Self { dim, points })
    }

    /// Smallest grid that evaluates quadratic products of fields truncated at
    /// `n` without aliasing (`4n + 2` points per axis).
    pub fn for_truncation(dim: usize, n: usize) -> Result<Self> {
        Self::new(dim, (4 * n + 2).max(4))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Total number of lattice points, `N^d`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.points as f64
    }

    /// Largest truncation index whose quadratic products this grid resolves.
    pub fn max_dealiased_truncation(&self) -> usize {
        (self.points - 2) / 4
    }

    /// Rejects truncations that would alias under a quadratic product.
    pub fn check_dealias(&self, n: &MultiIndex) -> Result<()> {
        let max = n.max();
        let required = 4 * max + 2;
        if self.points < required {
            return Err(Error::Aliasing {
                points: self.points,
                truncation: max,
                required,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn wavenumber(&self, j: usize) -> i64 {
        let n = self.points as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    /// Index along an axis holding wavenumber `k`, if representable.
    #[inline]
    pub fn axis_index(&self, k: i64) -> Option<usize> {
        let n = self.points as i64;
        if k >= -(n / 2) && k < n / 2 {
            Some(k.rem_euclid(n) as usize)
        } else {
            None
        }
    }

    /// Wavevector of a flat index. Unused trailing axes are zero.
    #[inline]
    pub fn mode(&self, flat: usize) -> [i64; 3] {
        let mut k = [0i64; 3];
        let mut rem = flat;
        for axis in (0..self.dim).rev() {
            k[axis] = self.wavenumber(rem % self.points);
            rem /= self.points;
        }
        k
    }

    pub fn flat_index(&self, k: &[i64]) -> Option<usize> {
        let mut flat = 0;
        for axis in 0..self.dim {
            flat = flat * self.points + self.axis_index(k.get(axis).copied().unwrap_or(0))?;
        }
        Some(flat)
    }

    /// Flat index of the mode `-k` (modulo the lattice).
    #[inline]
    pub fn conjugate_index(&self, flat: usize) -> usize {
        let n = self.points;
        let mut rem = flat;
        let mut out = 0;
        let mut stride = 1;
        for _ in 0..self.dim {
            let j = rem % n;
            rem /= n;
            out += ((n - j) % n) * stride;
            stride *= n;
        }
        out
    }

    /// True when any component of the mode sits on the Nyquist index.
    #[inline]
    pub fn is_nyquist(&self, k: &[i64; 3]) -> bool {
        let half = -(self.points as i64 / 2);
        k[..self.dim].iter().any(|&ki| ki == half)
    }

    /// Physical coordinates of a flat index.
    pub fn coordinates(&self, flat: usize) -> [f64; 3] {
        let mut x = [0.0; 3];
        let mut rem = flat;
        let h = self.spacing();
        for axis in (0..self.dim).rev() {
            x[axis] = (rem % self.points) as f64 * h;
            rem /= self.points;
        }
        x
    }

    /// Squared wavenumber magnitude `|k|^2` of a flat index.
    #[inline]
    pub fn mode_norm_sq(&self, flat: usize) -> f64 {
        let k = self.mode(flat);
        k.iter().map(|&ki| (ki * ki) as f64).sum()
    }
}

/// Per-axis truncation bounds `n = (n_1, ..., n_d)` of a rectangular partial sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(bounds: Vec<usize>) -> Self {
        Self(bounds)
    }

    /// The cubic index `(n, ..., n)` used by square truncation.
    pub fn cube(dim: usize, n: usize) -> Self {
        Self(vec![n; dim])
    }

    pub fn bounds(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `minn(n)`, the smallest per-axis bound.
    pub fn minn(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    #[inline]
    pub fn contains(&self, k: &[i64; 3]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(axis, &n)| k[axis].unsigned_abs() as usize <= n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(0, 8).is_err());
        assert!(Grid::new(4, 8).is_err());
        assert!(Grid::new(2, 7).is_err());
        assert!(Grid::new(2, 2).is_err());
        assert!(Grid::new(3, 4).is_ok());
    }

    #[test]
    fn wavenumber_layout() {
        let g = Grid::new(1, 8).unwrap();
        let ks: Vec<i64> = (0..8).map(|j| g.wavenumber(j)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        assert_eq!(g.axis_index(-1), Some(7));
        assert_eq!(g.axis_index(4), None);
        assert_eq!(g.axis_index(-4), Some(4));
    }

    #[test]
    fn flat_roundtrip_and_conjugates() {
        let g = Grid::new(3, 6).unwrap();
        for flat in 0..g.len() {
            let k = g.mode(flat);
            assert_eq!(g.flat_index(&k), Some(flat));
            let c = g.conjugate_index(flat);
            let kc = g.mode(c);
            for axis in 0..3 {
                assert_eq!((k[axis] + kc[axis]).rem_euclid(6), 0);
            }
        }
    }

    #[test]
    fn dealias_check() {
        let g = Grid::new(2, 34).unwrap();
        assert!(g.check_dealias(&MultiIndex::cube(2, 8)).is_ok());
        assert!(matches!(
            g.check_dealias(&MultiIndex::cube(2, 9)),
            Err(Error::Aliasing { required: 38, .. })
        ));
        assert_eq!(g.max_dealiased_truncation(), 8);
    }

    #[test]
    fn multi_index_helpers() {
        let a = MultiIndex::new(vec![3, 5, 2]);
        let b = MultiIndex::new(vec![4, 1, 2]);
        assert_eq!(a.minn(), 2);
        assert_eq!(a.meet(&b), MultiIndex::new(vec![3, 1, 2]));
        assert!(a.contains(&[-3, 5, 0]));
        assert!(!a.contains(&[0, 0, 3]));
    }
}
