use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{gn_functional, gn_left, gn_right, FunctionalsError};
use crate::groundstate::RadialProfile;
use crate::spectral::{self, Field, Grid};

/// Grid on which the randomized suite draws its fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteGrid {
    pub half_length_x: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for SuiteGrid {
    fn default() -> Self {
        Self {
            half_length_x: 16.0,
            nx: 256,
            ny: 64,
        }
    }
}

/// Parameters that reproduce one random field of the suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldDescriptor {
    pub seed: u64,
    pub trial: usize,
    pub width: f64,
    pub center: f64,
    pub max_mode_x: usize,
    pub max_mode_y: usize,
}

impl FieldDescriptor {
    /// First 16 hex digits of the SHA-256 of the descriptor's JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("descriptor serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().take(8).fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    /// Gaussian envelope in x times a band-limited random field.
    pub fn build(&self, grid: &Grid) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial as u64);
        let carrier = spectral::band_limited_random(grid, self.max_mode_x, self.max_mode_y, &mut rng);
        let (w, c) = (self.width, self.center);
        let cv = carrier.values();
        let values = (0..grid.nx())
            .flat_map(|i| {
                let env = (-((grid.x(i) - c) / w).powi(2)).exp();
                let cv = &cv;
                (0..grid.ny()).map(move |j| env * cv[grid.index(i, j)])
            })
            .collect();
        Field::from_values(grid, values).expect("same grid")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SgnRow {
    pub trial: usize,
    pub hash: String,
    pub left: f64,
    pub right: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SgnSuiteReport {
    pub k: u32,
    pub c_kr: f64,
    pub c_kt: f64,
    pub seed: u64,
    pub trials: usize,
    pub max_ratio: f64,
    pub worst_trial: usize,
    pub rows: Vec<SgnRow>,
}

impl SgnSuiteReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("trial,hash,left,right,ratio\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{:.16e},{:.16e},{:.16e}", r.trial, r.hash, r.left, r.right, r.ratio);
        }
        s
    }
}

fn draw_descriptor(seed: u64, trial: usize, grid: &SuiteGrid) -> FieldDescriptor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_f1e1d);
    rng.set_stream(trial as u64);
    let l = grid.half_length_x;
    FieldDescriptor {
        seed,
        trial,
        width: rng.gen_range(0.5..3.0),
        center: rng.gen_range(-0.25 * l..0.25 * l),
        max_mode_x: rng.gen_range(1..=grid.nx / 12),
        max_mode_y: rng.gen_range(1..=(grid.ny / 12).max(1)),
    }
}

/// Checks `||f||_{k+2}^{k+2} <= C_R ||f||^2 (||grad f||^2 + C_T ||f||^2)^{k/2}`
/// on `trials` random smooth fields. Fails with the worst violator.
pub fn verify_sgn_suite(
    k: u32,
    c_kr: f64,
    c_kt: f64,
    trials: usize,
    seed: u64,
    grid: &SuiteGrid,
) -> Result<SgnSuiteReport, FunctionalsError> {
    if trials == 0 {
        return Err(FunctionalsError::InvalidArgument("trials must be at least 1".into()));
    }
    if !(c_kr > 0.0) || !(c_kt >= 0.0) {
        return Err(FunctionalsError::InvalidArgument(format!("constants must be positive, got C_R={c_kr}, C_T={c_kt}")));
    }
    let g = Grid::cylinder(grid.half_length_x, grid.nx, grid.ny)?;
    let mut rows = Vec::with_capacity(trials);
    let mut worst: Option<(FieldDescriptor, f64)> = None;
    for trial in 0..trials {
        let d = draw_descriptor(seed, trial, grid);
        let f = d.build(&g);
        let left = gn_left(&f, k);
        let right = gn_right(&f, k, c_kr, c_kt);
        let ratio = left / right;
        if worst.as_ref().map_or(true, |(_, r)| ratio > *r) {
            worst = Some((d.clone(), ratio));
        }
        rows.push(SgnRow {
            trial,
            hash: d.hash(),
            left,
            right,
            ratio,
        });
    }
    let (wd, max_ratio) = worst.expect("at least one trial");
    if !(max_ratio <= 1.0 + 1e-9) {
        return Err(FunctionalsError::ViolationFound {
            descriptor: wd.hash(),
            ratio: max_ratio,
        });
    }
    Ok(SgnSuiteReport {
        k,
        c_kr,
        c_kt,
        seed,
        trials,
        max_ratio,
        worst_trial: wd.trial,
        rows,
    })
}

/// One point of a scaling scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub lambda: f64,
    pub ratio: f64,
}

/// `left / right` for the y-independent fields `exp(-(lambda x)^2)` with
/// the transverse constant switched off. The ratio grows like
/// `lambda^{-k}` as the profile spreads.
pub fn flat_scan(k: u32, c_kr: f64, lambdas: &[f64], grid: &Grid) -> Vec<ScanPoint> {
    lambdas
        .iter()
        .map(|&lambda| {
            let f = Field::from_fn(grid, |x, _| (-(lambda * x).powi(2)).exp());
            ScanPoint {
                lambda,
                ratio: gn_left(&f, k) / gn_right(&f, k, c_kr, 0.0),
            }
        })
        .collect()
}

/// Gagliardo–Nirenberg quotient of `lambda Q(lambda x, lambda (y - 1/2))`
/// for each `lambda`.
pub fn concentration_scan(k: u32, profile: &RadialProfile, lambdas: &[f64], grid: &Grid) -> Vec<ScanPoint> {
    let center = (0.0, grid.y_origin() + 0.5 * grid.length_y());
    lambdas
        .iter()
        .map(|&lambda| {
            let f = profile.embed(grid, center, lambda, lambda);
            ScanPoint {
                lambda,
                ratio: gn_functional(&f, k),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::default_cylinder_constant;

    #[test]
    fn descriptor_hash_is_stable() {
        let d = draw_descriptor(7, 3, &SuiteGrid::default());
        assert_eq!(d.hash(), draw_descriptor(7, 3, &SuiteGrid::default()).hash());
        assert_eq!(d.hash().len(), 16);
        assert_ne!(d.hash(), draw_descriptor(7, 4, &SuiteGrid::default()).hash());
    }

    #[test]
    fn single_transverse_mode_has_strict_margin() {
        let g = Grid::cylinder(4.0, 16, 32).unwrap();
        let f = Field::from_fn(&g, |_, y| (2.0 * std::f64::consts::PI * y).cos());
        let c_t = default_cylinder_constant();
        for k in [2u32, 3] {
            let (l, r) = (gn_left(&f, k), gn_right(&f, k, 0.17, c_t));
            assert!(l < 0.5 * r, "k={k}: {l} vs {r}");
        }
    }

    #[test]
    fn small_suite_has_no_violation() {
        let c_t = default_cylinder_constant();
        let grid = SuiteGrid {
            half_length_x: 16.0,
            nx: 128,
            ny: 32,
        };
        let rep = verify_sgn_suite(2, 0.1709, c_t, 5, 11, &grid).unwrap();
        assert_eq!(rep.rows.len(), 5);
        assert!(rep.max_ratio < 1.0);
        assert!(rep.to_csv().starts_with("trial,hash,left,right,ratio\n"));
    }

    #[test]
    fn absurd_constant_is_caught() {
        let grid = SuiteGrid {
            half_length_x: 16.0,
            nx: 128,
            ny: 32,
        };
        let err = verify_sgn_suite(2, 1e-6, 0.0, 3, 1, &grid).unwrap_err();
        assert!(matches!(err, FunctionalsError::ViolationFound { .. }));
    }
}
