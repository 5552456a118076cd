use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::shells::{check_dyadic, shell_radius, DyadicShell};
use super::spacetime::{spacetime_lebesgue_norm, xsb_norm, SpaceTimeField};
use super::AnalysisError;
use crate::spectral::{slot, signed_index, Field, Grid};

/// Half-length of the x-box used by the probe.
const PROBE_HALF_LENGTH: f64 = 4.0;
/// Time points used by the probe.
const PROBE_TIME_POINTS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub s: f64,
    pub b: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleStats {
    #[serde(rename = "N")]
    pub n: u64,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

/// Ratio statistics `||u||_{L^4} / ||u||_{X^{s,b}}` across dyadic scales.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub exponents: Exponents,
    pub per_scale: Vec<ScaleStats>,
    /// Least-squares slope of `log max_ratio` against `log N`.
    pub slope: f64,
    pub trials: usize,
    pub seed: u64,
}

fn even_at_least(n: usize, min: usize) -> usize {
    let n = n.max(min);
    n + n % 2
}

/// Grid for scale `n`, sized so that `|u|^4` is integrated exactly by the
/// grid rule for data supported in the shell.
pub fn probe_grid(n: u64) -> Result<Grid, AnalysisError> {
    let (_, hi) = DyadicShell::new(n, 1)?.spatial_support();
    let jx = (hi / 3f64.sqrt() * PROBE_HALF_LENGTH / std::f64::consts::PI).floor() as usize;
    let jy = (hi / (2.0 * std::f64::consts::PI)).floor() as usize;
    Ok(Grid::cylinder(
        PROBE_HALF_LENGTH,
        even_at_least(4 * jx + 2, 8),
        even_at_least(4 * jy + 2, 2),
    )?)
}

/// Unit-magnitude random-phase spectrum on the support annulus of shell `n`,
/// Hermitian-paired so the field is real.
pub fn shell_random_data(grid: &Grid, n: u64, rng: &mut ChaCha8Rng) -> Result<Field, AnalysisError> {
    let (lo, hi) = DyadicShell::new(n, 1)?.spatial_support();
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut c = vec![Complex64::new(0.0, 0.0); grid.len()];
    for i in 0..nx {
        for j in 0..ny {
            if grid.is_nyquist_x(i) || grid.is_nyquist_y(j) {
                continue;
            }
            let r = shell_radius(grid.xi(i), grid.q(j));
            if r < lo || r > hi {
                continue;
            }
            let pi = slot(-signed_index(i, nx), nx);
            let pj = slot(-signed_index(j, ny), ny);
            let (a, b) = (grid.index(i, j), grid.index(pi, pj));
            if b < a {
                continue;
            }
            if a == b {
                c[a] = Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0);
            } else {
                let z = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                c[a] = z;
                c[b] = z.conj();
            }
        }
    }
    Ok(Field::from_coeffs(grid, c)?)
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// For each dyadic `n` in `scales`, draws `trials` free waves with
/// shell-localized random data, applies the time cutoff, and records
/// `||u||_{L^4_{txy}} / ||u||_{X^{s,b}}`.
pub fn strichartz_ratio_scan(
    seed: u64,
    scales: &[u64],
    trials: usize,
    exponents: Exponents,
) -> Result<ProbeReport, AnalysisError> {
    if trials == 0 {
        return Err(AnalysisError::InvalidArgument("trials must be at least 1".into()));
    }
    if scales.len() < 2 {
        return Err(AnalysisError::InvalidArgument("at least two scales are needed for a slope".into()));
    }
    let mut per_scale = Vec::with_capacity(scales.len());
    for (si, &n) in scales.iter().enumerate() {
        check_dyadic(n)?;
        let grid = probe_grid(n)?;
        let ratios: Vec<f64> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((si * trials + t) as u64);
                let phi = shell_random_data(&grid, n, &mut rng)?;
                let u = SpaceTimeField::from_free_wave(&phi, PROBE_TIME_POINTS)?;
                Ok(spacetime_lebesgue_norm(&u, 4.0) / xsb_norm(&u, exponents.s, exponents.b))
            })
            .collect::<Result<_, AnalysisError>>()?;
        per_scale.push(ScaleStats {
            n,
            max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean_ratio: ratios.iter().sum::<f64>() / trials as f64,
        });
    }
    let pts: Vec<(f64, f64)> = per_scale
        .iter()
        .map(|s| ((s.n as f64).ln(), s.max_ratio.ln()))
        .collect();
    Ok(ProbeReport {
        exponents,
        per_scale,
        slope: slope(&pts),
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_data_is_real_and_localized() {
        let g = probe_grid(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = shell_random_data(&g, 8, &mut rng).unwrap();
        assert!(f.imaginary_residue() < 1e-12);
        let c = f.coeffs();
        for i in 0..g.nx() {
            for j in 0..g.ny() {
                let r = shell_radius(g.xi(i), g.q(j));
                if c[g.index(i, j)].norm() > 0.0 {
                    assert!((5.0..=12.8).contains(&r));
                }
            }
        }
    }

    #[test]
    fn lowest_scale_gives_finite_ratio() {
        let rep = strichartz_ratio_scan(5, &[1, 2], 2, Exponents { s: 1.0 / 6.0, b: 0.375 }).unwrap();
        for s in &rep.per_scale {
            assert!(s.max_ratio.is_finite() && s.max_ratio > 0.0);
        }
        assert!(rep.slope.is_finite());
    }

    #[test]
    fn scan_is_deterministic() {
        let e = Exponents { s: 0.0, b: 0.375 };
        let a = strichartz_ratio_scan(3, &[1, 4], 3, e).unwrap();
        let b = strichartz_ratio_scan(3, &[1, 4], 3, e).unwrap();
        assert_eq!(a, b);
    }
}
