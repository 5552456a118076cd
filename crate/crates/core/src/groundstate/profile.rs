use super::GroundState;
use crate::spectral::{self, Field, Grid};

const REFINEMENT: usize = 64;

/// Radial samples of `Q_k` on a fine uniform mesh with cubic interpolation
/// and an `r^{-1/2} e^{-r}` tail beyond the computational box.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    step: f64,
    samples: Vec<f64>,
}

impl RadialProfile {
    pub(super) fn from_ground_state(gs: &GroundState) -> Self {
        let grid = gs.grid();
        let n = grid.nx();
        let center = grid.ny() / 2;
        let v = gs.profile.values();
        let row: Vec<f64> = (0..n).map(|i| v[grid.index(i, center)]).collect();
        let fine = spectral::upsample_1d(&row, REFINEMENT);
        let origin = n / 2 * REFINEMENT;
        let count = n / 2 * REFINEMENT;
        let samples: Vec<f64> = (0..=count).map(|m| fine[(origin + m) % fine.len()]).collect();
        Self {
            step: grid.dx() / REFINEMENT as f64,
            samples,
        }
    }

    /// Largest radius covered by samples.
    pub fn radius(&self) -> f64 {
        self.step * (self.samples.len() - 1) as f64
    }

    fn sample(&self, m: isize) -> f64 {
        let idx = m.unsigned_abs();
        if idx < self.samples.len() {
            self.samples[idx]
        } else {
            self.tail(idx as f64 * self.step)
        }
    }

    fn tail(&self, r: f64) -> f64 {
        let r0 = self.radius();
        let q0 = self.samples[self.samples.len() - 1];
        q0 * (r0 / r).sqrt() * (r0 - r).exp()
    }

    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        if r >= self.radius() {
            return self.tail(r);
        }
        let t = r / self.step;
        let m = t.floor() as isize;
        let s = t - m as f64;
        let (p0, p1, p2, p3) = (self.sample(m - 1), self.sample(m), self.sample(m + 1), self.sample(m + 2));
        p1 + 0.5
            * s
            * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + s * (3.0 * (p1 - p2) + p3 - p0)))
    }

    /// `amplitude * Q(lambda |(x, y) - center|)` on `grid`, summed over
    /// enough transverse periods to make the result smooth on the torus.
    pub fn embed(&self, grid: &Grid, center: (f64, f64), lambda: f64, amplitude: f64) -> Field {
        let period = grid.length_y();
        let images = ((40.0 / (lambda * period)).ceil() as i32).max(1);
        Field::from_fn(grid, |x, y| {
            let dx = lambda * (x - center.0);
            let sum: f64 = (-images..=images)
                .map(|n| {
                    let dy = lambda * (y - center.1 + n as f64 * period);
                    self.eval(dx.hypot(dy))
                })
                .sum();
            amplitude * sum
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{petviashvili_solve, SolveOptions};
    use crate::spectral;

    #[test]
    fn interpolant_reproduces_off_axis_values() {
        let opts = SolveOptions {
            points: 256,
            ..SolveOptions::default()
        };
        let gs = petviashvili_solve(2, &opts).unwrap();
        let prof = gs.radial_profile();
        let max = gs.profile.max_abs();
        for &(x, y) in &[(0.3, 0.1), (1.7, -0.4), (-2.2, 2.9), (0.05, 4.5)] {
            let exact = spectral::evaluate_at(&gs.profile, x, y);
            let approx = prof.eval(f64::hypot(x, y));
            assert!((exact - approx).abs() < 1e-7 * max, "{x} {y}: {exact} vs {approx}");
        }
        assert!((prof.eval(0.0) - max).abs() < 1e-9 * max);
    }
}
