//! Conserved functionals, the Gagliardo–Nirenberg inequality on the
//! cylinder with an explicit transverse constant, and global-existence
//! threshold reports.

mod partition;
mod sgn;
mod threshold;

use thiserror::Error;

use crate::dynamics::Sign;
use crate::spectral::{self, Field, SpectralError};

pub use partition::{build_partition, default_cylinder_constant, PartitionChoice, PartitionProfile};
pub use sgn::{
    concentration_scan, flat_scan, verify_sgn_suite, FieldDescriptor, ScanPoint, SgnRow, SgnSuiteReport,
    SuiteGrid,
};
pub use threshold::{
    k2_gradient_bound, monitor_run, remark14_positivity_check, sample_f_maximum, strictly_less,
    threshold_report, FMaxSample, MonitorOutcome, ThresholdReport, Verdict,
};

#[derive(Debug, Error)]
pub enum FunctionalsError {
    #[error("partition construction failed: {0}")]
    ConstructionFailure(String),
    #[error("inequality violated by field {descriptor} (ratio {ratio:.17e})")]
    ViolationFound { descriptor: String, ratio: f64 },
    #[error("invalid order k = {0}")]
    InvalidOrder(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `M(u) = ∫ u^2`.
pub fn mass(u: &Field) -> f64 {
    spectral::l2_norm_sq_spectral(u)
}

/// Focusing energy `H(u) = ∫ ½|grad u|^2 - u^{k+2}/(k+2)`.
pub fn energy(u: &Field, k: u32) -> f64 {
    energy_signed(u, k, Sign::Focusing)
}

/// Energy with the potential term entering with the sign of the
/// nonlinearity: `-` when focusing, `+` when defocusing.
pub fn energy_signed(u: &Field, k: u32, sign: Sign) -> f64 {
    let p = k + 2;
    0.5 * spectral::grad_norm_sq(u) - sign.value() * spectral::integral_of_power(u, p) / p as f64
}

/// `||f||_{k+2}^{k+2}`.
pub fn gn_left(f: &Field, k: u32) -> f64 {
    spectral::integral_of_abs_power(f, k + 2)
}

/// `C_R ||f||_2^2 (||grad f||_2^2 + C_T ||f||_2^2)^{k/2}`.
pub fn gn_right(f: &Field, k: u32, c_kr: f64, c_kt: f64) -> f64 {
    let m = mass(f);
    c_kr * m * (spectral::grad_norm_sq(f) + c_kt * m).powf(k as f64 / 2.0)
}

/// Gagliardo–Nirenberg quotient `||f||_{k+2}^{k+2} / (||f||_2^2 ||grad f||_2^k)`.
pub fn gn_functional(f: &Field, k: u32) -> f64 {
    gn_left(f, k) / (mass(f) * spectral::grad_norm_sq(f).powf(k as f64 / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Grid;

    #[test]
    fn zero_field_has_zero_functionals() {
        let g = Grid::cylinder(4.0, 32, 8).unwrap();
        let z = Field::zeros(&g);
        assert_eq!(mass(&z), 0.0);
        assert_eq!(energy(&z, 2), 0.0);
        assert_eq!(gn_left(&z, 2), 0.0);
        assert_eq!(gn_right(&z, 2, 0.17, 100.0), 0.0);
    }

    #[test]
    fn constant_field_energy_is_pure_potential() {
        let g = Grid::cylinder(4.0, 32, 8).unwrap();
        let c = 0.7;
        let u = Field::from_fn(&g, |_, _| c);
        for k in 1..=4 {
            let exact = -g.area() * c.powi(k as i32 + 2) / (k as f64 + 2.0);
            assert!((energy(&u, k) - exact).abs() < 1e-13);
            assert!((energy_signed(&u, k, Sign::Defocusing) + exact).abs() < 1e-13);
        }
    }

    #[test]
    fn odd_power_uses_absolute_value() {
        let g = Grid::cylinder(4.0, 64, 16).unwrap();
        let u = Field::from_fn(&g, |x, _| (std::f64::consts::PI * x / 4.0).sin());
        // ∫|sin|^3 over two half periods of length 4 each, times unit width.
        let exact = 8.0 * 4.0 / (3.0 * std::f64::consts::PI);
        assert!((gn_left(&u, 1) - exact).abs() < 1e-3);
        assert!(spectral::integral_of_power(&u, 3).abs() < 1e-12);
    }
}
