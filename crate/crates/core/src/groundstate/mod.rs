//! Planar ground state `Q_k` of `ΔQ - Q + Q^{k+1} = 0` by Petviashvili
//! iteration, its norm identities and the sharp Gagliardo–Nirenberg
//! constant.

mod profile;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::spectral::{self, Field, Grid, SpectralError};

pub use profile::RadialProfile;

#[derive(Debug, Error)]
pub enum GroundStateError {
    #[error("Petviashvili iteration did not converge in {max_iter} iterations (residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },
    #[error("iterate degenerated: {0}")]
    Degenerate(String),
    #[error("invalid order k = {0}")]
    InvalidOrder(u32),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Solver settings for [`petviashvili_solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Half side of the square box `[-L, L)^2`.
    pub half_length: f64,
    /// Points per direction.
    pub points: usize,
    /// Stop once `||ΔQ - Q + Q^{k+1}||_2 < tol * ||Q||_2`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            half_length: 20.0,
            points: 512,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

/// Computed ground state with its norms.
#[derive(Clone, Debug)]
pub struct GroundState {
    pub k: u32,
    pub profile: Field,
    /// `||Q||_2^2`
    pub mass_sq: f64,
    /// `||grad Q||_2^2`
    pub grad_sq: f64,
    /// `||Q||_{k+2}^{k+2}`
    pub potential: f64,
    /// `||ΔQ - Q + Q^{k+1}||_2`
    pub residual: f64,
    pub sharp_constant: f64,
    pub iterations: usize,
}

/// The two sides of each scale-invariant reference identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceQuantities {
    pub s_k: f64,
    /// `H(Q)^{s_k} M(Q)^{1-s_k}` from the computed norms; absent for `k = 2`.
    pub hq_mq: Option<f64>,
    /// `((k-2)/4)^{s_k} ||Q||_2^2`; absent for `k = 2`.
    pub hq_mq_closed: Option<f64>,
    /// `||grad Q||_2^{s_k} ||Q||_2^{1-s_k}` from the computed norms.
    pub gradq_q: f64,
    /// `(k/2)^{(k-2)/(2k)} ||Q||_2`.
    pub gradq_q_closed: f64,
}

/// JSON report of a ground-state computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroundStateReport {
    pub k: u32,
    #[serde(rename = "L")]
    pub half_length: f64,
    #[serde(rename = "N")]
    pub points: usize,
    pub mass_sq: f64,
    pub grad_sq: f64,
    pub potential: f64,
    pub residual: f64,
    pub sharp_constant: f64,
    pub iterations: usize,
    pub s_k: f64,
    pub ref_quantities: Option<ReferenceQuantities>,
}

/// Residual `||ΔQ - Q + Q^{k+1}||_2` evaluated from grid values, independent
/// of the solver's internal bookkeeping.
pub fn ground_residual(q: &Field, k: u32) -> f64 {
    let lap = spectral::laplacian(q);
    let (l, v) = (lap.values(), q.values());
    let r: Vec<f64> = l
        .iter()
        .zip(v.iter())
        .map(|(a, u)| a - u + u.powi(k as i32 + 1))
        .collect();
    let r = Field::from_values(q.grid(), r).expect("same grid");
    spectral::lebesgue_norm(&r, 2.0)
}

/// `2^{(k-2)/2} (k+2) / (k^{k/2} ||Q_k||_2^k)` from the squared mass.
pub fn sharp_constant_from_mass(k: u32, mass_sq: f64) -> f64 {
    let kf = k as f64;
    2f64.powf((kf - 2.0) / 2.0) * (kf + 2.0) / (kf.powf(kf / 2.0) * mass_sq.powf(kf / 2.0))
}

pub fn sharp_constant(gs: &GroundState) -> f64 {
    sharp_constant_from_mass(gs.k, gs.mass_sq)
}

/// Petviashvili iteration from the seed `3 exp(-(x^2 + y^2))`.
pub fn petviashvili_solve(k: u32, opts: &SolveOptions) -> Result<GroundState, GroundStateError> {
    if k == 0 {
        return Err(GroundStateError::InvalidOrder(k));
    }
    if !(opts.tol > 0.0) {
        return Err(GroundStateError::Degenerate(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let grid = Grid::square(opts.half_length, opts.points)?;
    let symbol: Vec<f64> = (0..grid.nx())
        .flat_map(|i| {
            let xi2 = grid.xi(i).powi(2);
            let g = &grid;
            (0..grid.ny()).map(move |j| 1.0 + xi2 + g.q(j).powi(2))
        })
        .collect();
    let gamma = (k as f64 + 1.0) / k as f64;
    let area = grid.area();
    let power = k as i32 + 1;

    let seed = Field::from_fn(&grid, |x, y| 3.0 * (-(x * x + y * y)).exp());
    let mut q: Vec<Complex64> = seed.into_coeffs();
    let mut residual = f64::INFINITY;
    for iter in 0..opts.max_iter {
        let values = Field::from_coeffs(&grid, q.clone())?.into_values();
        let max = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if !max.is_finite() || max > 1e12 || max < 1e-12 {
            return Err(GroundStateError::Degenerate(format!("max |Q| = {max:e} at iteration {iter}")));
        }
        let p = Field::from_values(&grid, values.iter().map(|v| v.powi(power)).collect())?.into_coeffs();

        let mut num = 0.0;
        let mut den = 0.0;
        let mut res_sq = 0.0;
        let mut norm_sq = 0.0;
        for ((qc, pc), s) in q.iter().zip(&p).zip(&symbol) {
            num += s * qc.norm_sqr();
            den += (qc.conj() * pc).re;
            res_sq += (pc - qc * s).norm_sqr();
            norm_sq += qc.norm_sqr();
        }
        residual = (res_sq * area).sqrt();
        if residual < opts.tol * (norm_sq * area).sqrt() {
            return Ok(finish(k, &grid, q, iter));
        }
        let stab = num / den;
        if !stab.is_finite() || stab <= 0.0 {
            return Err(GroundStateError::Degenerate(format!("stabilizing factor {stab:e} at iteration {iter}")));
        }
        let scale = stab.powf(gamma);
        for ((qc, pc), s) in q.iter_mut().zip(&p).zip(&symbol) {
            *qc = pc * (scale / s);
        }
        spectral::hermitian_symmetrize(&grid, &mut q);
    }
    Err(GroundStateError::NoConvergence {
        max_iter: opts.max_iter,
        residual,
    })
}

fn finish(k: u32, grid: &Grid, coeffs: Vec<Complex64>, iterations: usize) -> GroundState {
    let profile = Field::from_coeffs(grid, coeffs).expect("same grid");
    let profile = spectral::inverse_transform(profile);
    let mass_sq = spectral::l2_norm_sq_spectral(&profile);
    let grad_sq = spectral::grad_norm_sq(&profile);
    let potential = spectral::integral_of_power(&profile, k + 2);
    let residual = ground_residual(&profile, k);
    GroundState {
        k,
        profile,
        mass_sq,
        grad_sq,
        potential,
        residual,
        sharp_constant: sharp_constant_from_mass(k, mass_sq),
        iterations,
    }
}

impl GroundState {
    pub fn grid(&self) -> &Grid {
        self.profile.grid()
    }

    pub fn mass_norm(&self) -> f64 {
        self.mass_sq.sqrt()
    }

    /// `H(Q) = ½||grad Q||² - ||Q||_{k+2}^{k+2}/(k+2)` from the computed norms.
    pub fn energy(&self) -> f64 {
        0.5 * self.grad_sq - self.potential / (self.k as f64 + 2.0)
    }

    /// Relative defects of the two norm identities
    /// `||grad Q||² = (k/2)||Q||²` and `||Q||_{k+2}^{k+2} = ((k+2)/2)||Q||²`.
    pub fn pohozaev_defects(&self) -> (f64, f64) {
        let kf = self.k as f64;
        let g = (self.grad_sq - 0.5 * kf * self.mass_sq).abs() / (0.5 * kf * self.mass_sq);
        let p = (self.potential - 0.5 * (kf + 2.0) * self.mass_sq).abs() / (0.5 * (kf + 2.0) * self.mass_sq);
        (g, p)
    }

    /// Largest deviation under the grid symmetries `x -> -x`, `y -> -y` and
    /// `x <-> y`, relative to `max Q`.
    pub fn max_asymmetry(&self) -> f64 {
        let grid = self.grid();
        let n = grid.nx();
        let v = self.profile.values();
        let mirror = |i: usize| (n - i) % n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let a = v[grid.index(i, j)];
                worst = worst
                    .max((a - v[grid.index(mirror(i), j)]).abs())
                    .max((a - v[grid.index(i, mirror(j))]).abs())
                    .max((a - v[grid.index(j, i)]).abs());
            }
        }
        worst / self.profile.max_abs()
    }

    /// Minimum of the profile over the disc `r <= radius`, relative to `max Q`.
    pub fn min_on_disc(&self, radius: f64) -> f64 {
        let grid = self.grid();
        let v = self.profile.values();
        let mut min = f64::INFINITY;
        for i in 0..grid.nx() {
            for j in 0..grid.ny() {
                if grid.x(i).hypot(grid.y(j)) <= radius {
                    min = min.min(v[grid.index(i, j)]);
                }
            }
        }
        min / self.profile.max_abs()
    }

    /// Radial interpolant of the profile, for placing `Q_k` on other grids.
    pub fn radial_profile(&self) -> RadialProfile {
        RadialProfile::from_ground_state(self)
    }

    pub fn reference_quantities(&self) -> Result<ReferenceQuantities, GroundStateError> {
        reference_quantities(self)
    }

    pub fn report(&self) -> GroundStateReport {
        let kf = self.k as f64;
        GroundStateReport {
            k: self.k,
            half_length: self.grid().half_length_x(),
            points: self.grid().nx(),
            mass_sq: self.mass_sq,
            grad_sq: self.grad_sq,
            potential: self.potential,
            residual: self.residual,
            sharp_constant: self.sharp_constant,
            iterations: self.iterations,
            s_k: (kf - 2.0) / kf,
            ref_quantities: self.reference_quantities().ok(),
        }
    }
}

/// Both sides of the scale-invariant identities for `H(Q)` and `||grad Q||`.
pub fn reference_quantities(gs: &GroundState) -> Result<ReferenceQuantities, GroundStateError> {
    if gs.k < 2 {
        return Err(GroundStateError::InvalidOrder(gs.k));
    }
    let kf = gs.k as f64;
    let s = (kf - 2.0) / kf;
    let (hq_mq, hq_mq_closed) = if gs.k >= 3 {
        (
            Some(gs.energy().powf(s) * gs.mass_sq.powf(1.0 - s)),
            Some(((kf - 2.0) / 4.0).powf(s) * gs.mass_sq),
        )
    } else {
        (None, None)
    };
    Ok(ReferenceQuantities {
        s_k: s,
        hq_mq,
        hq_mq_closed,
        gradq_q: gs.grad_sq.sqrt().powf(s) * gs.mass_norm().powf(1.0 - s),
        gradq_q_closed: (kf / 2.0).powf((kf - 2.0) / (2.0 * kf)) * gs.mass_norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(k: u32, n: usize) -> GroundState {
        let opts = SolveOptions {
            points: n,
            ..SolveOptions::default()
        };
        petviashvili_solve(k, &opts).unwrap()
    }

    #[test]
    fn sharp_constant_for_cubic_case_reduces() {
        assert!((sharp_constant_from_mass(2, 11.7) - 2.0 / 11.7).abs() < 1e-15);
    }

    #[test]
    fn rejects_order_zero() {
        assert!(matches!(
            petviashvili_solve(0, &SolveOptions::default()),
            Err(GroundStateError::InvalidOrder(0))
        ));
    }

    #[test]
    fn reports_no_convergence() {
        let opts = SolveOptions {
            points: 64,
            max_iter: 3,
            ..SolveOptions::default()
        };
        assert!(matches!(
            petviashvili_solve(2, &opts),
            Err(GroundStateError::NoConvergence { max_iter: 3, .. })
        ));
    }

    #[test]
    fn cubic_ground_state_on_coarse_grid() {
        let gs = solve(2, 256);
        assert!(gs.residual < 1e-9 * gs.mass_norm());
        let (g, p) = gs.pohozaev_defects();
        assert!(g < 1e-6 && p < 1e-6, "{g} {p}");
        assert!((gs.mass_sq - 11.700_896_7).abs() < 1e-5, "{}", gs.mass_sq);
        assert!(gs.energy().abs() < 1e-6 * gs.mass_sq);
        assert!(gs.max_asymmetry() < 1e-8);
        assert!(gs.min_on_disc(10.0) > 0.0);
        let rq = gs.reference_quantities().unwrap();
        assert_eq!(rq.s_k, 0.0);
        assert!(rq.hq_mq.is_none());
        assert!((rq.gradq_q - gs.mass_norm()).abs() < 1e-15);
    }

    #[test]
    fn quartic_reference_quantities_agree() {
        let gs = solve(4, 512);
        let rq = gs.reference_quantities().unwrap();
        let (a, b) = (rq.hq_mq.unwrap(), rq.hq_mq_closed.unwrap());
        assert!((a - b).abs() < 1e-5 * b, "{a} {b}");
        assert!((rq.gradq_q - rq.gradq_q_closed).abs() < 1e-5 * rq.gradq_q_closed);
    }

    #[test]
    fn first_order_gives_invalid_reference_order() {
        let gs = solve(1, 128);
        assert!(matches!(gs.reference_quantities(), Err(GroundStateError::InvalidOrder(1))));
    }
}
