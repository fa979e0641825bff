//! Binary field snapshots.
//!
//! Layout, all little-endian:
//!
//! ```text
//! magic    4 bytes  "SNSE"
//! version  u32      1
//! d        u32      spatial dimension
//! D        u32      component count
//! n_i      u32 × d  truncation bound per axis
//! time     f64
//! data     f64 × 2·D·∏(2n_i+1)
//! ```
//!
//! `data` is component-major; within a component the wavevectors run over
//! `∏[-n_i, n_i]` lexicographically (axis 0 slowest, each axis ascending),
//! and every coefficient is written as `re` then `im`.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::{Grid, MultiIndex};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"SNSE";
pub const VERSION: u32 = 1;

/// Decoded snapshot, independent of any grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub bounds: MultiIndex,
    pub ncomp: usize,
    /// `coefficients[j]` lists component `j` in lexicographic wavevector order.
    pub coefficients: Vec<Vec<Complex64>>,
}

fn box_modes(bounds: &MultiIndex) -> Vec<[i64; 3]> {
    let mut modes = vec![[0i64; 3]];
    for (axis, &n) in bounds.bounds().iter().enumerate() {
        let n = n as i64;
        modes = modes
            .into_iter()
            .flat_map(|k| {
                (-n..=n).map(move |ki| {
                    let mut k = k;
                    k[axis] = ki;
                    k
                })
            })
            .collect();
    }
    modes
}

impl Snapshot {
    /// Captures the box `bounds` of a field. Modes the grid cannot represent
    /// are written as zero.
    pub fn capture(field: &SpectralField, bounds: &MultiIndex, time: f64) -> Result<Self> {
        if bounds.dim() != field.grid().dim() {
            return Err(Error::ShapeMismatch("snapshot bounds do not match field dimension".into()));
        }
        let modes = box_modes(bounds);
        let coefficients = (0..field.ncomp())
            .map(|j| modes.iter().map(|k| field.coefficient(j, k)).collect())
            .collect();
        Ok(Self {
            time,
            bounds: bounds.clone(),
            ncomp: field.ncomp(),
            coefficients,
        })
    }

    /// Places the stored coefficients on `grid`.
    pub fn to_field(&self, grid: Grid) -> Result<SpectralField> {
        if grid.dim() != self.bounds.dim() {
            return Err(Error::ShapeMismatch("snapshot dimension does not match grid".into()));
        }
        let modes = box_modes(&self.bounds);
        let mut field = SpectralField::zeros(grid, self.ncomp);
        for (j, coeffs) in self.coefficients.iter().enumerate() {
            for (k, z) in modes.iter().zip(coeffs) {
                if let Some(i) = grid.flat_index(k) {
                    field.component_mut(j)[i] = *z;
                }
            }
        }
        Ok(field)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.bounds.dim() as u32).to_le_bytes())?;
        w.write_all(&(self.ncomp as u32).to_le_bytes())?;
        for &n in self.bounds.bounds() {
            w.write_all(&(n as u32).to_le_bytes())?;
        }
        w.write_all(&self.time.to_le_bytes())?;
        for coeffs in &self.coefficients {
            for z in coeffs {
                w.write_all(&z.re.to_le_bytes())?;
                w.write_all(&z.im.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Snapshot(format!("bad magic {magic:?}")));
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(Error::Snapshot(format!("unsupported version {version}")));
        }
        let dim = read_u32(&mut r)? as usize;
        if !(1..=3).contains(&dim) {
            return Err(Error::Snapshot(format!("invalid dimension {dim}")));
        }
        let ncomp = read_u32(&mut r)? as usize;
        let bounds = MultiIndex::new(
            (0..dim)
                .map(|_| read_u32(&mut r).map(|n| n as usize))
                .collect::<Result<_>>()?,
        );
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let time = f64::from_le_bytes(buf);
        let count: usize = bounds.bounds().iter().map(|&n| 2 * n + 1).product();
        let mut coefficients = Vec::with_capacity(ncomp);
        for _ in 0..ncomp {
            let mut coeffs = Vec::with_capacity(count);
            for _ in 0..count {
                r.read_exact(&mut buf)?;
                let re = f64::from_le_bytes(buf);
                r.read_exact(&mut buf)?;
                let im = f64::from_le_bytes(buf);
                coeffs.push(Complex64::new(re, im));
            }
            coefficients.push(coeffs);
        }
        Ok(Self {
            time,
            bounds,
            ncomp,
            coefficients,
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        out
    }
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let g = Grid::new(2, 8).unwrap();
        let mut f = SpectralField::zeros(g, 2);
        f.set_mode(1, &[1, -1], Complex64::new(0.25, -0.5));
        let snap = Snapshot::capture(&f, &MultiIndex::new(vec![1, 2]), 0.125).unwrap();
        let bytes = snap.to_bytes();
        assert_eq!(&bytes[0..4], b"SNSE");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 2);
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 2);
        assert_eq!(u32::from_le_bytes(bytes[16..20].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(bytes[20..24].try_into().unwrap()), 2);
        assert_eq!(f64::from_le_bytes(bytes[24..32].try_into().unwrap()), 0.125);
        assert_eq!(bytes.len(), 32 + 2 * 2 * 3 * 5 * 8);
        // component 1, k = (1,-1): lexicographic position 2*5 + 1 = 11
        let off = 32 + (15 + 11) * 16;
        assert_eq!(f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap()), 0.25);
        assert_eq!(f64::from_le_bytes(bytes[off + 8..off + 16].try_into().unwrap()), -0.5);
    }

    #[test]
    fn rejects_bad_magic() {
        let err = Snapshot::read_from(&b"NOPE\x01\0\0\0"[..]).unwrap_err();
        assert!(matches!(err, Error::Snapshot(_)));
    }
}
