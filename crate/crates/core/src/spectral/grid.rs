use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::fft::signed_index;
use super::SpectralError;

/// Doubly periodic collocation grid.
///
/// The x-direction is a truncation of the real line to `[-L_x, L_x)`. The
/// y-direction has period `length_y` starting at `y_origin`; the cylinder
/// `R x T` uses period 1 on `[0, 1)`, while ground-state boxes use
/// `[-L, L)` in both directions. Wavenumbers are angular: `xi_j = pi j / L_x`
/// and `q_m = 2 pi m / length_y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    half_length_x: f64,
    length_y: f64,
    y_origin: f64,
    nx: usize,
    ny: usize,
}

fn check_points(n: usize, axis: &str) -> Result<(), SpectralError> {
    if n < 2 || n % 2 != 0 {
        return Err(SpectralError::InvalidGrid(format!(
            "{axis} point count must be a positive even integer, got {n}"
        )));
    }
    Ok(())
}

impl Grid {
    /// Truncated cylinder `[-L_x, L_x) x [0, 1)`.
    pub fn cylinder(half_length_x: f64, nx: usize, ny: usize) -> Result<Self, SpectralError> {
        Self::new(half_length_x, nx, 1.0, 0.0, ny)
    }

    /// Square box `[-L, L)^2`, used for planar profiles.
    pub fn square(half_length: f64, n: usize) -> Result<Self, SpectralError> {
        Self::new(half_length, n, 2.0 * half_length, -half_length, n)
    }

    pub fn new(
        half_length_x: f64,
        nx: usize,
        length_y: f64,
        y_origin: f64,
        ny: usize,
    ) -> Result<Self, SpectralError> {
        if !(half_length_x.is_finite() && half_length_x > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "half_length_x must be positive and finite, got {half_length_x}"
            )));
        }
        if !(length_y.is_finite() && length_y > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "length_y must be positive and finite, got {length_y}"
            )));
        }
        check_points(nx, "x")?;
        check_points(ny, "y")?;
        Ok(Self {
            half_length_x,
            length_y,
            y_origin,
            nx,
            ny,
        })
    }

    pub fn half_length_x(&self) -> f64 {
        self.half_length_x
    }

    pub fn length_y(&self) -> f64 {
        self.length_y
    }

    pub fn y_origin(&self) -> f64 {
        self.y_origin
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when the y-period is exactly the unit torus.
    pub fn is_cylinder(&self) -> bool {
        self.length_y == 1.0 && self.y_origin == 0.0
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_length_x / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.length_y / self.ny as f64
    }

    /// Area of the periodic cell.
    pub fn area(&self) -> f64 {
        2.0 * self.half_length_x * self.length_y
    }

    /// Quadrature weight of a single grid point.
    pub fn cell(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_length_x + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_origin + j as f64 * self.dy()
    }

    /// x-wavenumber of storage slot `i` (FFT order).
    pub fn xi(&self, i: usize) -> f64 {
        PI * signed_index(i, self.nx) as f64 / self.half_length_x
    }

    /// y-wavenumber of storage slot `j` (FFT order).
    pub fn q(&self, j: usize) -> f64 {
        2.0 * PI * signed_index(j, self.ny) as f64 / self.length_y
    }

    pub fn is_nyquist_x(&self, i: usize) -> bool {
        i == self.nx / 2
    }

    pub fn is_nyquist_y(&self, j: usize) -> bool {
        j == self.ny / 2
    }

    /// x-wavenumbers ordered from `j = -N_x/2` to `N_x/2 - 1`.
    pub fn freq_x(&self) -> Vec<f64> {
        let n = self.nx as i64;
        (-n / 2..n / 2)
            .map(|j| PI * j as f64 / self.half_length_x)
            .collect()
    }

    /// y-wavenumbers ordered from `m = -N_y/2` to `N_y/2 - 1`.
    pub fn freq_y(&self) -> Vec<f64> {
        let n = self.ny as i64;
        (-n / 2..n / 2)
            .map(|m| 2.0 * PI * m as f64 / self.length_y)
            .collect()
    }

    /// Largest retained |xi|.
    pub fn max_xi(&self) -> f64 {
        PI * (self.nx / 2) as f64 / self.half_length_x
    }

    pub fn max_q(&self) -> f64 {
        2.0 * PI * (self.ny / 2) as f64 / self.length_y
    }

    /// Same physical cell with different resolution.
    pub fn with_points(&self, nx: usize, ny: usize) -> Result<Self, SpectralError> {
        Self::new(self.half_length_x, nx, self.length_y, self.y_origin, ny)
    }

    /// Flat index of `(i, j)`: x outer, y inner.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }
}
