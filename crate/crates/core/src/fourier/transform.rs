//! Multi-dimensional FFT between lattice samples and Fourier coefficients.
//!
//! Plans are cached per thread and per axis length.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::{PhysicalField, SpectralField};
use super::grid::Grid;

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        let (planner, cache) = &mut *cell.borrow_mut();
        cache
            .entry((len, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(len)
                } else {
                    planner.plan_fft_forward(len)
                }
            })
            .clone()
    })
}

/// Unnormalized in-place d-dimensional FFT of one component.
fn fft_nd(grid: Grid, data: &mut [Complex64], inverse: bool) {
    let n = grid.points();
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let total = grid.len();
    let mut line = vec![Complex64::default(); n];
    for axis in 0..grid.dim() {
        // stride of this axis in the row-major layout
        let stride = n.pow((grid.dim() - 1 - axis) as u32);
        if stride == 1 {
            for chunk in data.chunks_exact_mut(n) {
                fft.process_with_scratch(chunk, &mut scratch);
            }
            continue;
        }
        let block = stride * n;
        for base in (0..total).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = data[start + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[start + j * stride] = *v;
                }
            }
        }
    }
}

/// Lattice samples to Fourier coefficients, scaled by `1/N^d` so that
/// coefficients approximate `∫ f e^{-2πi k·x} dx`.
pub fn forward_transform(f: &PhysicalField) -> SpectralField {
    let grid = f.grid();
    let scale = 1.0 / grid.len() as f64;
    let components = f
        .components()
        .iter()
        .map(|c| {
            let mut data: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            fft_nd(grid, &mut data, false);
            data.iter_mut().for_each(|z| *z *= scale);
            data
        })
        .collect();
    SpectralField::from_components(grid, components).expect("shape preserved by transform")
}

/// Fourier coefficients to lattice samples (real part of the synthesis sum).
pub fn inverse_transform(f: &SpectralField) -> PhysicalField {
    let grid = f.grid();
    let components = f
        .components()
        .iter()
        .map(|c| {
            let mut data = c.clone();
            fft_nd(grid, &mut data, true);
            data.iter().map(|z| z.re).collect()
        })
        .collect();
    PhysicalField::from_components(grid, components).expect("shape preserved by transform")
}
