//! Initial-condition library.

use crate::analysis::{self, AnalysisError};
use crate::spectral::{Field, Grid};

/// Number of periodic images used to wrap transverse Gaussians.
const IMAGES: i32 = 4;

/// `a exp(-(x^2 + sigma (y - 1/2)^2))`, wrapped periodically in y so that
/// the datum is smooth on the torus.
pub fn gaussian(grid: &Grid, amplitude: f64, sigma: f64) -> Field {
    gaussian_with_width(grid, amplitude, 1.0, sigma)
}

/// As [`gaussian`] with x-profile `exp(-(x / width)^2)`.
pub fn gaussian_with_width(grid: &Grid, amplitude: f64, width: f64, sigma: f64) -> Field {
    let center = grid.y_origin() + 0.5 * grid.length_y();
    let period = grid.length_y();
    Field::from_fn(grid, |x, y| {
        let transverse: f64 = (-IMAGES..=IMAGES)
            .map(|n| {
                let d = y - center + n as f64 * period;
                (-sigma * d * d).exp()
            })
            .sum();
        amplitude * (-(x / width).powi(2)).exp() * transverse
    })
}

/// Line soliton `Q_c(x)` times `1 + eps cos(2 pi y)`.
pub fn perturbed_line_soliton(grid: &Grid, c: f64, k: u32, eps: f64) -> Result<Field, AnalysisError> {
    let q = analysis::line_soliton(c, k, grid)?;
    let period = grid.length_y();
    let origin = grid.y_origin();
    let v = q.values();
    let mut out = Vec::with_capacity(v.len());
    for i in 0..grid.nx() {
        for j in 0..grid.ny() {
            let y = (grid.y(j) - origin) / period;
            out.push(v[grid.index(i, j)] * (1.0 + eps * (2.0 * std::f64::consts::PI * y).cos()));
        }
    }
    Ok(Field::from_values(grid, out).expect("same grid"))
}
