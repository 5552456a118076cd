use std::f64::consts::PI;

use num_complex::Complex64;

use super::{grid_symbol, DynamicsError, Sign};
use crate::spectral::{self, Grid};

/// Contour points for the φ-function averages.
const CONTOUR_POINTS: usize = 64;

/// Precomputed ETD-RK4 coefficients for one grid, power and step size.
pub struct Etdrk4 {
    grid: Grid,
    k: u32,
    sign: f64,
    nonlinear: bool,
    e: Vec<Complex64>,
    e2: Vec<Complex64>,
    q: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
    f3: Vec<Complex64>,
    dx: Vec<Complex64>,
}

struct Coefficients {
    q: Complex64,
    f1: Complex64,
    f2: Complex64,
    f3: Complex64,
}

/// Contour means of the ETD-RK4 φ-combinations at `z = h L`, scaled by `h`.
fn phi_coefficients(z: Complex64, h: f64) -> Coefficients {
    let mut acc = [Complex64::new(0.0, 0.0); 4];
    for m in 0..CONTOUR_POINTS {
        let theta = PI * (m as f64 + 0.5) * 2.0 / CONTOUR_POINTS as f64;
        let r = z + Complex64::from_polar(1.0, theta);
        let er = r.exp();
        let r2 = r * r;
        let r3 = r2 * r;
        acc[0] += ((r * 0.5).exp() - 1.0) / r;
        acc[1] += (-4.0 - r + er * (4.0 - 3.0 * r + r2)) / r3;
        acc[2] += (2.0 + r + er * (r - 2.0)) / r3;
        acc[3] += (-4.0 - 3.0 * r - r2 + er * (4.0 - r)) / r3;
    }
    let scale = h / CONTOUR_POINTS as f64;
    Coefficients {
        q: acc[0] * scale,
        f1: acc[1] * scale,
        f2: acc[2] * scale,
        f3: acc[3] * scale,
    }
}

impl Etdrk4 {
    pub fn new(grid: &Grid, k: u32, sign: Sign, dt: f64) -> Self {
        let n = grid.len();
        let mut s = Self {
            grid: grid.clone(),
            k,
            sign: sign.value(),
            nonlinear: true,
            e: Vec::with_capacity(n),
            e2: Vec::with_capacity(n),
            q: Vec::with_capacity(n),
            f1: Vec::with_capacity(n),
            f2: Vec::with_capacity(n),
            f3: Vec::with_capacity(n),
            dx: Vec::with_capacity(n),
        };
        for i in 0..grid.nx() {
            for j in 0..grid.ny() {
                let z = Complex64::new(0.0, dt * grid_symbol(grid, i, j));
                let c = phi_coefficients(z, dt);
                s.e.push(z.exp());
                s.e2.push((z * 0.5).exp());
                s.q.push(c.q);
                s.f1.push(c.f1);
                s.f2.push(c.f2);
                s.f3.push(c.f3);
                s.dx.push(spectral::derivative_symbol(grid, 1, 0, i, j));
            }
        }
        s
    }

    /// Drops the nonlinear term; the step then reduces to the exact free flow.
    pub fn linear_only(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Nonlinear term and the sup-norm of its argument.
    fn rhs(&self, v: &[Complex64]) -> (Vec<Complex64>, f64) {
        if !self.nonlinear {
            let max = 0.0;
            return (vec![Complex64::new(0.0, 0.0); v.len()], max);
        }
        let (mut p, max) = spectral::dealiased_power_with_max(&self.grid, v, self.k + 1);
        for (pi, d) in p.iter_mut().zip(&self.dx) {
            *pi *= -self.sign * d;
        }
        (p, max)
    }

    /// Advances the coefficient vector `v` by one step. Also returns
    /// `||u||_inf` of the input state, measured on the padded grid.
    pub fn step(&self, v: &[Complex64], t: f64) -> Result<(Vec<Complex64>, f64), DynamicsError> {
        let n = v.len();
        let (nv, linf) = self.rhs(v);
        let a: Vec<Complex64> = (0..n).map(|i| self.e2[i] * v[i] + self.q[i] * nv[i]).collect();
        let (na, _) = self.rhs(&a);
        let b: Vec<Complex64> = (0..n).map(|i| self.e2[i] * v[i] + self.q[i] * na[i]).collect();
        let (nb, _) = self.rhs(&b);
        let c: Vec<Complex64> = (0..n)
            .map(|i| self.e2[i] * a[i] + self.q[i] * (2.0 * nb[i] - nv[i]))
            .collect();
        let (nc, _) = self.rhs(&c);
        let out: Vec<Complex64> = (0..n)
            .map(|i| {
                self.e[i] * v[i]
                    + self.f1[i] * nv[i]
                    + 2.0 * self.f2[i] * (na[i] + nb[i])
                    + self.f3[i] * nc[i]
            })
            .collect();
        if !linf.is_finite() || out.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(DynamicsError::NonFinite { t });
        }
        Ok((out, linf))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// phi-combinations at z = 0 have the limits 1/2, 1/6, 1/6, 1/6.
    #[test]
    fn contour_limits_at_zero() {
        let c = phi_coefficients(Complex64::new(0.0, 0.0), 1.0);
        assert!((c.q - 0.5).norm() < 1e-14);
        assert!((c.f1 - 1.0 / 6.0).norm() < 1e-14);
        assert!((c.f2 - 1.0 / 6.0).norm() < 1e-14);
        assert!((c.f3 - 1.0 / 6.0).norm() < 1e-14);
    }

    /// Away from the origin the contour mean equals the direct formula.
    #[test]
    fn contour_matches_direct_formula() {
        for &z in &[Complex64::new(0.0, 3.0), Complex64::new(0.0, -40.0), Complex64::new(-2.0, 5.0)] {
            let c = phi_coefficients(z, 1.0);
            let ez = z.exp();
            let z3 = z * z * z;
            let q = ((z * 0.5).exp() - 1.0) / z;
            let f1 = (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            let f2 = (2.0 + z + ez * (z - 2.0)) / z3;
            let f3 = (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
            assert!((c.q - q).norm() < 1e-12);
            assert!((c.f1 - f1).norm() < 1e-12);
            assert!((c.f2 - f2).norm() < 1e-12);
            assert!((c.f3 - f3).norm() < 1e-12);
        }
    }
}
