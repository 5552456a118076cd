use std::borrow::Cow;

use num_complex::Complex64;

use super::fft;
use super::{Grid, SpectralError};

/// Real scalar field on a [`Grid`] with lazily synchronized physical and
/// spectral representations.
///
/// Spectral coefficients are normalized so that
/// `u(x_i, y_j) = sum_{l,m} c_{l,m} exp(i (xi_l (x_i + L_x) + q_m (y_j - y_0)))`,
/// i.e. phases are measured from the first grid point. Either
/// representation may be stale; accessors transform on demand without
/// mutating, and [`Field::forward_transform`] / [`Field::inverse_transform`]
/// cache the result.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
    coeffs: Vec<Complex64>,
    physical_current: bool,
    spectral_current: bool,
}

impl Field {
    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
            physical_current: true,
            spectral_current: true,
        }
    }

    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Result<Self, SpectralError> {
        if values.len() != grid.len() {
            return Err(SpectralError::ShapeMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        Ok(Self {
            grid: grid.clone(),
            values,
            coeffs: Vec::new(),
            physical_current: true,
            spectral_current: false,
        })
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.nx() {
            let x = grid.x(i);
            for j in 0..grid.ny() {
                values.push(f(x, grid.y(j)));
            }
        }
        Self {
            grid: grid.clone(),
            values,
            coeffs: Vec::new(),
            physical_current: true,
            spectral_current: false,
        }
    }

    /// Builds a field from spectral coefficients. The caller is responsible
    /// for Hermitian symmetry; the physical values keep only the real part.
    pub fn from_coeffs(grid: &Grid, coeffs: Vec<Complex64>) -> Result<Self, SpectralError> {
        if coeffs.len() != grid.len() {
            return Err(SpectralError::ShapeMismatch {
                expected: grid.len(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            grid: grid.clone(),
            values: Vec::new(),
            coeffs,
            physical_current: false,
            spectral_current: true,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn is_physical_current(&self) -> bool {
        self.physical_current
    }

    pub fn is_spectral_current(&self) -> bool {
        self.spectral_current
    }

    pub fn forward_transform(&mut self) {
        if !self.spectral_current {
            self.coeffs = fft::forward_real(&self.values, self.grid.nx(), self.grid.ny());
            self.spectral_current = true;
        }
    }

    pub fn inverse_transform(&mut self) {
        if !self.physical_current {
            self.values = fft::inverse_real(&self.coeffs, self.grid.nx(), self.grid.ny());
            self.physical_current = true;
        }
    }

    pub fn values(&self) -> Cow<'_, [f64]> {
        if self.physical_current {
            Cow::Borrowed(&self.values)
        } else {
            Cow::Owned(fft::inverse_real(&self.coeffs, self.grid.nx(), self.grid.ny()))
        }
    }

    pub fn coeffs(&self) -> Cow<'_, [Complex64]> {
        if self.spectral_current {
            Cow::Borrowed(&self.coeffs)
        } else {
            Cow::Owned(fft::forward_real(&self.values, self.grid.nx(), self.grid.ny()))
        }
    }

    /// Mutable physical values; invalidates the spectral representation.
    pub fn values_mut(&mut self) -> &mut [f64] {
        self.inverse_transform();
        self.spectral_current = false;
        &mut self.values
    }

    /// Mutable coefficients; invalidates the physical representation.
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        self.forward_transform();
        self.physical_current = false;
        &mut self.coeffs
    }

    pub fn into_values(self) -> Vec<f64> {
        match self.values() {
            Cow::Borrowed(_) => self.values,
            Cow::Owned(v) => v,
        }
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        match self.coeffs() {
            Cow::Borrowed(_) => self.coeffs,
            Cow::Owned(c) => c,
        }
    }

    /// Value at grid point `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values()[self.grid.index(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest imaginary part produced by inverting the stored coefficients,
    /// a measure of how far they are from Hermitian symmetry.
    pub fn imaginary_residue(&self) -> f64 {
        let c = self.coeffs();
        fft::inverse_complex(&c, self.grid.nx(), self.grid.ny())
            .iter()
            .fold(0.0_f64, |m, z| m.max(z.im.abs()))
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        if out.physical_current {
            out.values.iter_mut().for_each(|v| *v *= a);
        }
        if out.spectral_current {
            out.coeffs.iter_mut().for_each(|c| *c *= a);
        }
        out
    }

    /// `self + b * other`, computed in physical space.
    pub fn add_scaled(&self, other: &Field, b: f64) -> Result<Self, SpectralError> {
        if self.grid != other.grid {
            return Err(SpectralError::GridMismatch);
        }
        let ov = other.values();
        let values = self
            .values()
            .iter()
            .zip(ov.iter())
            .map(|(u, v)| u + b * v)
            .collect();
        Field::from_values(&self.grid, values)
    }

    /// Pointwise map in physical space.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let values = self.values().iter().map(|&v| f(v)).collect();
        Field::from_values(&self.grid, values).expect("same grid")
    }
}

/// Returns `f` with its spectral representation current.
pub fn forward_transform(mut f: Field) -> Field {
    f.forward_transform();
    f
}

/// Returns `f` with its physical representation current.
pub fn inverse_transform(mut f: Field) -> Field {
    f.inverse_transform();
    f
}
