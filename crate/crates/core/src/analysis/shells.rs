use serde::Serialize;

use super::AnalysisError;
use crate::cutoff::Bump;
use crate::spectral::{self, Field, Grid};

/// Spatial frequency weight `|(xi, q)| = sqrt(3 xi^2 + q^2)`.
pub fn shell_radius(xi: f64, q: f64) -> f64 {
    (3.0 * xi * xi + q * q).sqrt()
}

/// Dyadic Littlewood–Paley multiplier: `phi(r)` for `n = 1` and
/// `phi(r / n) - phi(2 r / n)` for `n >= 2`, where `phi` is the standard
/// bump (1 on `[0, 5/4]`, 0 beyond `8/5`).
pub fn dyadic_multiplier(n: u64, r: f64) -> f64 {
    let phi = Bump::STANDARD;
    let nf = n as f64;
    if n <= 1 {
        phi.eval(r)
    } else {
        phi.eval(r / nf) - phi.eval(2.0 * r / nf)
    }
}

/// A pair of spatial and modulation dyadic scales.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DyadicShell {
    #[serde(rename = "N")]
    pub spatial: u64,
    #[serde(rename = "L")]
    pub modulation: u64,
}

pub(crate) fn check_dyadic(n: u64) -> Result<(), AnalysisError> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(AnalysisError::NotDyadic(n))
    }
}

impl DyadicShell {
    pub fn new(spatial: u64, modulation: u64) -> Result<Self, AnalysisError> {
        check_dyadic(spatial)?;
        check_dyadic(modulation)?;
        Ok(Self { spatial, modulation })
    }

    pub fn spatial_weight(&self, xi: f64, q: f64) -> f64 {
        dyadic_multiplier(self.spatial, shell_radius(xi, q))
    }

    pub fn modulation_weight(&self, sigma: f64) -> f64 {
        dyadic_multiplier(self.modulation, sigma.abs())
    }

    /// Closed annulus containing the support of the spatial multiplier.
    pub fn spatial_support(&self) -> (f64, f64) {
        let n = self.spatial as f64;
        if self.spatial == 1 {
            (0.0, 1.6)
        } else {
            (0.625 * n, 1.6 * n)
        }
    }
}

/// Objects carrying spatial Fourier data that can be localized to a shell.
pub trait SpatialProjection: Sized {
    fn project_spatial(&self, n: u64) -> Result<Self, AnalysisError>;
}

pub(crate) fn spatial_weights(grid: &Grid, n: u64) -> Vec<f64> {
    (0..grid.nx())
        .flat_map(|i| (0..grid.ny()).map(move |j| (i, j)))
        .map(|(i, j)| dyadic_multiplier(n, shell_radius(grid.xi(i), grid.q(j))))
        .collect()
}

impl SpatialProjection for Field {
    fn project_spatial(&self, n: u64) -> Result<Self, AnalysisError> {
        check_dyadic(n)?;
        let w = spatial_weights(self.grid(), n);
        Ok(spectral::apply_multiplier(self, |i, j| w[self.grid().index(i, j)].into()))
    }
}

/// `P_N u`.
pub fn project_spatial<T: SpatialProjection>(u: &T, n: u64) -> Result<T, AnalysisError> {
    u.project_spatial(n)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn multipliers_telescope() {
        for r in [0.0, 0.7, 1.3, 2.0, 17.0, 300.0, 1279.0] {
            let s: f64 = (0..=10).map(|e| dyadic_multiplier(1 << e, r)).sum();
            assert!((s - 1.0).abs() < 1e-15, "r={r}: {s}");
        }
    }

    #[test]
    fn supports_match_annuli() {
        for e in 0..6 {
            let shell = DyadicShell::new(1 << e, 1).unwrap();
            let (lo, hi) = shell.spatial_support();
            for t in 0..2000 {
                let r = t as f64 * 0.05;
                if r < lo - 1e-12 || r > hi + 1e-12 {
                    assert_eq!(dyadic_multiplier(1 << e, r), 0.0, "N={} r={r}", 1 << e);
                }
            }
        }
    }

    #[test]
    fn dc_mode_lives_in_first_shell() {
        let g = Grid::cylinder(4.0, 16, 8).unwrap();
        let u = Field::from_fn(&g, |_, _| 2.0);
        assert!((project_spatial(&u, 1).unwrap().at(3, 3) - 2.0).abs() < 1e-14);
        assert!(project_spatial(&u, 2).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn projections_reconstruct_and_separate() {
        let g = Grid::cylinder(8.0, 128, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = spectral::band_limited_random(&g, 40, 20, &mut rng);
        let mut sum = Field::zeros(&g);
        for e in 0..=10 {
            sum = sum.add_scaled(&project_spatial(&u, 1 << e).unwrap(), 1.0).unwrap();
        }
        let err = sum.add_scaled(&u, -1.0).unwrap().max_abs();
        assert!(err < 1e-12 * u.max_abs(), "{err:e}");
        let pn = project_spatial(&u, 4).unwrap();
        assert!(project_spatial(&pn, 16).unwrap().max_abs() < 1e-14);
        assert!(project_spatial(&pn, 1).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn rejects_non_dyadic() {
        assert!(matches!(DyadicShell::new(3, 1), Err(AnalysisError::NotDyadic(3))));
    }
}
