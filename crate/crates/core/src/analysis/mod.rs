//! Resonance function, line solitons, Littlewood–Paley and modulation
//! projectors, discrete `X^{s,b}` norms and the `L^4` Strichartz probe.

mod shells;
mod soliton;
mod spacetime;
mod strichartz;

use thiserror::Error;

use crate::dynamics::dispersion_symbol;
use crate::spectral::SpectralError;

pub use shells::{dyadic_multiplier, project_spatial, shell_radius, DyadicShell, SpatialProjection};
pub use soliton::{line_soliton, line_soliton_residual, line_soliton_value};
pub use spacetime::{project_modulation, spacetime_lebesgue_norm, xsb_norm, SpaceTimeField, DEFAULT_TIME_POINTS, TIME_WINDOW};
pub use strichartz::{probe_grid, shell_random_data, strichartz_ratio_scan, Exponents, ProbeReport, ScaleStats};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("domain too small: Q_c(±L_x) / max Q_c = {ratio:e} exceeds 1e-12")]
    DomainTooSmall { ratio: f64 },
    #[error("modulation shell {l} needs |tau| up to {needed}, lattice reaches {available}")]
    ResolutionError { l: u64, needed: f64, available: f64 },
    #[error("{0} is not a dyadic number")]
    NotDyadic(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `3 xi1 xi2 (xi1 + xi2) + xi2 q1^2 + xi1 q2^2 + 2 (xi1 + xi2) q1 q2`.
pub fn resonance(xi1: f64, q1: f64, xi2: f64, q2: f64) -> f64 {
    3.0 * xi1 * xi2 * (xi1 + xi2) + xi2 * q1 * q1 + xi1 * q2 * q2 + 2.0 * (xi1 + xi2) * q1 * q2
}

/// `w(xi1 + xi2, q1 + q2) - w(xi1, q1) - w(xi2, q2)` with the magnitude of
/// the largest term, for relative comparisons.
pub fn resonance_by_difference(xi1: f64, q1: f64, xi2: f64, q2: f64) -> (f64, f64) {
    let a = dispersion_symbol(xi1 + xi2, q1 + q2);
    let b = dispersion_symbol(xi1, q1);
    let c = dispersion_symbol(xi2, q2);
    (a - b - c, a.abs().max(b.abs()).max(c.abs()))
}

/// Step used by [`second_derivatives_check`].
pub const SECOND_DIFFERENCE_STEP: f64 = 0.5;

/// Central second differences of `xi1 -> H(xi1, q1, xi - xi1, q - q1)` and
/// `q1 -> H(...)`. Both maps are quadratic, so the differences are exact up
/// to rounding.
pub fn second_derivatives_check(xi: f64, q: f64, xi1: f64, q1: f64) -> (f64, f64) {
    let h = SECOND_DIFFERENCE_STEP;
    let along_xi = |a: f64| resonance(a, q1, xi - a, q - q1);
    let along_q = |b: f64| resonance(xi1, b, xi - xi1, q - b);
    (
        (along_xi(xi1 + h) - 2.0 * along_xi(xi1) + along_xi(xi1 - h)) / (h * h),
        (along_q(q1 + h) - 2.0 * along_q(q1) + along_q(q1 - h)) / (h * h),
    )
}

/// Exact second derivatives of the two maps in [`second_derivatives_check`]:
/// `(-6 xi, -2 xi)`.
pub fn second_derivatives_closed_form(xi: f64) -> (f64, f64) {
    (-6.0 * xi, -2.0 * xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonance_examples() {
        assert_eq!(resonance(1.0, 0.0, 1.0, 0.0), 6.0);
        assert_eq!(resonance(2.5, -3.0, -2.5, 3.0), 0.0);
        let (d, _) = resonance_by_difference(1.0, 0.0, 1.0, 0.0);
        assert_eq!(d, 6.0);
    }

    #[test]
    fn second_differences_are_exact_for_quadratics() {
        let (a0, b0) = second_derivatives_check(0.0, 1.0, 0.3, 2.0);
        assert!(a0.abs() < 1e-12 && b0.abs() < 1e-12);
        let (a, b) = second_derivatives_check(2.0, 5.0, -1.5, 7.0);
        assert!((a + 12.0).abs() < 1e-9 && (b + 4.0).abs() < 1e-9, "{a} {b}");
        assert_eq!(second_derivatives_closed_form(2.0), (-12.0, -4.0));
    }
}
