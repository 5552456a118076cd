//! Planned complex FFTs over row-major 2D arrays (x outer, y inner).

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

pub(crate) fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = planner().lock().expect("fft planner poisoned");
    if inverse {
        planner.plan_fft_inverse(len)
    } else {
        planner.plan_fft_forward(len)
    }
}

/// Rows handed to one rayon task. Each row is transformed independently so
/// the result does not depend on the thread count.
const ROWS_PER_TASK: usize = 16;

fn transform_rows(data: &mut [Complex64], len: usize, inverse: bool) {
    let fft = plan(len, inverse);
    data.par_chunks_mut(len * ROWS_PER_TASK)
        .for_each(|chunk| fft.process(chunk));
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
    const B: usize = 32;
    for ib in (0..rows).step_by(B) {
        for jb in (0..cols).step_by(B) {
            for i in ib..(ib + B).min(rows) {
                for j in jb..(jb + B).min(cols) {
                    dst[j * rows + i] = src[i * cols + j];
                }
            }
        }
    }
}

/// Unnormalized in-place 2D DFT of an `nx * ny` array.
pub(crate) fn fft2(data: &mut [Complex64], nx: usize, ny: usize, inverse: bool) {
    debug_assert_eq!(data.len(), nx * ny);
    transform_rows(data, ny, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); data.len()];
    transpose(data, &mut scratch, nx, ny);
    transform_rows(&mut scratch, nx, inverse);
    transpose(&scratch, data, ny, nx);
}

/// Normalized forward transform of real samples: `u = sum c exp(i(xi x + q y))`.
pub(crate) fn forward_real(values: &[f64], nx: usize, ny: usize) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2(&mut data, nx, ny, false);
    let scale = 1.0 / (nx * ny) as f64;
    data.iter_mut().for_each(|c| *c *= scale);
    data
}

/// Inverse of [`forward_real`]; the imaginary residue is discarded.
pub(crate) fn inverse_real(coeffs: &[Complex64], nx: usize, ny: usize) -> Vec<f64> {
    let mut data = coeffs.to_vec();
    fft2(&mut data, nx, ny, true);
    data.into_iter().map(|c| c.re).collect()
}

/// Inverse transform keeping the complex result (used to measure realness).
pub(crate) fn inverse_complex(coeffs: &[Complex64], nx: usize, ny: usize) -> Vec<Complex64> {
    let mut data = coeffs.to_vec();
    fft2(&mut data, nx, ny, true);
    data
}

/// Signed frequency index of storage slot `i` for a transform of length `n`.
pub(crate) fn signed_index(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Storage slot of signed index `k` for a transform of length `n`.
pub(crate) fn slot(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}
