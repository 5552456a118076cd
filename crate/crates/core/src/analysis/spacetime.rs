use num_complex::Complex64;
use rayon::prelude::*;

use super::shells::{check_dyadic, dyadic_multiplier, shell_radius, spatial_weights, SpatialProjection};
use super::AnalysisError;
use crate::cutoff::Bump;
use crate::spectral::{self, plan, signed_index, Field, Grid};

/// Half-length of the time window `[-2, 2]`.
pub const TIME_WINDOW: f64 = 2.0;
pub const DEFAULT_TIME_POINTS: usize = 512;

/// Real space-time field on `[-2, 2) x grid`, stored in the interaction
/// representation `p(t) = exp(-i t w(xi, q)) u_hat(t)` so that the discrete
/// time-frequency of `p` is the modulation `tau - w(xi, q)`.
#[derive(Clone, Debug)]
pub struct SpaceTimeField {
    grid: Grid,
    nt: usize,
    /// Time-major: slice `n` holds the normalized spatial coefficients of
    /// `p(t_n)`.
    profile: Vec<Complex64>,
}

fn dispersion_table(grid: &Grid) -> Vec<f64> {
    (0..grid.nx())
        .flat_map(|i| (0..grid.ny()).map(move |j| (i, j)))
        .map(|(i, j)| crate::dynamics::grid_symbol(grid, i, j))
        .collect()
}

/// In-place DFT along time of a time-major array of `nt` slices.
fn transform_time(data: &mut [Complex64], nt: usize, len: usize, inverse: bool) {
    let mut cols = vec![Complex64::new(0.0, 0.0); data.len()];
    for n in 0..nt {
        for m in 0..len {
            cols[m * nt + n] = data[n * len + m];
        }
    }
    let fft = plan(nt, inverse);
    cols.par_chunks_mut(nt).for_each(|c| fft.process(c));
    for n in 0..nt {
        for m in 0..len {
            data[n * len + m] = cols[m * nt + n];
        }
    }
}

impl SpaceTimeField {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn time_points(&self) -> usize {
        self.nt
    }

    pub fn dt(&self) -> f64 {
        2.0 * TIME_WINDOW / self.nt as f64
    }

    pub fn time(&self, n: usize) -> f64 {
        -TIME_WINDOW + n as f64 * self.dt()
    }

    /// Modulation frequency of time-slot `m`.
    pub fn sigma(&self, m: usize) -> f64 {
        std::f64::consts::PI * signed_index(m, self.nt) as f64 / TIME_WINDOW
    }

    /// Largest modulation on the lattice, `pi N_t / 4`.
    pub fn max_modulation(&self) -> f64 {
        std::f64::consts::PI * self.nt as f64 / (2.0 * TIME_WINDOW)
    }

    fn check_points(nt: usize) -> Result<(), AnalysisError> {
        if nt < 4 || nt % 2 != 0 {
            return Err(AnalysisError::InvalidArgument(format!("time points must be even and >= 4, got {nt}")));
        }
        Ok(())
    }

    /// `eta(t) exp(-t d_x Δ) phi` with `eta` the standard time cutoff.
    pub fn from_free_wave(phi: &Field, nt: usize) -> Result<Self, AnalysisError> {
        Self::check_points(nt)?;
        let grid = phi.grid().clone();
        let c = phi.coeffs();
        let mut profile = Vec::with_capacity(nt * grid.len());
        let dt = 2.0 * TIME_WINDOW / nt as f64;
        for n in 0..nt {
            let eta = Bump::STANDARD.eval(-TIME_WINDOW + n as f64 * dt);
            profile.extend(c.iter().map(|z| z * eta));
        }
        Ok(Self { grid, nt, profile })
    }

    /// Builds the field from physical slices `u(t_n)`.
    pub fn from_slices(slices: &[Field]) -> Result<Self, AnalysisError> {
        let nt = slices.len();
        Self::check_points(nt)?;
        let grid = slices[0].grid().clone();
        let w = dispersion_table(&grid);
        let dt = 2.0 * TIME_WINDOW / nt as f64;
        let mut profile = Vec::with_capacity(nt * grid.len());
        for (n, s) in slices.iter().enumerate() {
            if *s.grid() != grid {
                return Err(spectral::SpectralError::GridMismatch.into());
            }
            let t = -TIME_WINDOW + n as f64 * dt;
            let c = s.coeffs();
            profile.extend(c.iter().zip(&w).map(|(z, wk)| z * Complex64::from_polar(1.0, -t * wk)));
        }
        Ok(Self { grid, nt, profile })
    }

    /// Builds the field directly from its modulation spectrum (time-major,
    /// normalized time-DFT coefficients of the interaction profile).
    pub fn from_modulation_spectrum(grid: &Grid, nt: usize, mut spectrum: Vec<Complex64>) -> Result<Self, AnalysisError> {
        Self::check_points(nt)?;
        if spectrum.len() != nt * grid.len() {
            return Err(spectral::SpectralError::ShapeMismatch {
                expected: nt * grid.len(),
                found: spectrum.len(),
            }
            .into());
        }
        transform_time(&mut spectrum, nt, grid.len(), true);
        Ok(Self {
            grid: grid.clone(),
            nt,
            profile: spectrum,
        })
    }

    /// Physical field `u(t_n)`.
    pub fn slice(&self, n: usize) -> Field {
        let len = self.grid.len();
        let w = dispersion_table(&self.grid);
        let t = self.time(n);
        let c: Vec<Complex64> = self.profile[n * len..(n + 1) * len]
            .iter()
            .zip(&w)
            .map(|(z, wk)| z * Complex64::from_polar(1.0, t * wk))
            .collect();
        Field::from_coeffs(&self.grid, c).expect("same grid")
    }

    /// Normalized time-DFT of the interaction profile, time-major; slot `m`
    /// corresponds to modulation [`SpaceTimeField::sigma`]`(m)`.
    pub fn modulation_spectrum(&self) -> Vec<Complex64> {
        let mut s = self.profile.clone();
        transform_time(&mut s, self.nt, self.grid.len(), false);
        let scale = 1.0 / self.nt as f64;
        s.iter_mut().for_each(|z| *z *= scale);
        s
    }

    /// Fraction of `||u||^2_{L^2_{txy}}` carried by modulations `|sigma| <= cap`.
    pub fn modulation_mass_fraction(&self, cap: f64) -> f64 {
        let s = self.modulation_spectrum();
        let len = self.grid.len();
        let (mut inside, mut total) = (0.0, 0.0);
        for m in 0..self.nt {
            let e: f64 = s[m * len..(m + 1) * len].iter().map(|z| z.norm_sqr()).sum();
            total += e;
            if self.sigma(m).abs() <= cap {
                inside += e;
            }
        }
        inside / total
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            profile: self.profile.iter().map(|z| z * a).collect(),
            ..self.clone()
        }
    }

    /// Pointwise sum; both fields must share grid and time lattice.
    pub fn add(&self, other: &Self) -> Result<Self, AnalysisError> {
        if self.grid != other.grid || self.nt != other.nt {
            return Err(spectral::SpectralError::GridMismatch.into());
        }
        Ok(Self {
            profile: self.profile.iter().zip(&other.profile).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    /// Largest absolute value over all slices.
    pub fn max_abs(&self) -> f64 {
        (0..self.nt).map(|n| self.slice(n).max_abs()).fold(0.0, f64::max)
    }

    /// `||u||_{L^2_{txy}}` by Parseval.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = self.profile.iter().map(|z| z.norm_sqr()).sum();
        (sum * self.grid.area() * self.dt()).sqrt()
    }
}

impl SpatialProjection for SpaceTimeField {
    fn project_spatial(&self, n: u64) -> Result<Self, AnalysisError> {
        check_dyadic(n)?;
        let w = spatial_weights(&self.grid, n);
        let len = self.grid.len();
        let profile = self
            .profile
            .iter()
            .enumerate()
            .map(|(idx, z)| z * w[idx % len])
            .collect();
        Ok(Self {
            profile,
            ..self.clone()
        })
    }
}

/// `Q_L u`: multiplies the modulation spectrum by the dyadic cutoff of
/// `|tau - w(xi, q)|` at scale `l`.
pub fn project_modulation(u: &SpaceTimeField, l: u64) -> Result<SpaceTimeField, AnalysisError> {
    check_dyadic(l)?;
    let needed = 1.6 * l as f64;
    let available = u.max_modulation();
    if needed > available {
        return Err(AnalysisError::ResolutionError { l, needed, available });
    }
    let len = u.grid.len();
    let mut s = u.modulation_spectrum();
    for m in 0..u.nt {
        let w = dyadic_multiplier(l, u.sigma(m).abs());
        s[m * len..(m + 1) * len].iter_mut().for_each(|z| *z *= w);
    }
    SpaceTimeField::from_modulation_spectrum(&u.grid, u.nt, s)
}

/// Discrete `X^{s,b}` norm with weights `<tau - w>^{b}` and
/// `<sqrt(3 xi^2 + q^2)>^{s}`, where `<a> = sqrt(1 + a^2)`.
pub fn xsb_norm(u: &SpaceTimeField, s: f64, b: f64) -> f64 {
    let grid = &u.grid;
    let len = grid.len();
    let spatial: Vec<f64> = (0..grid.nx())
        .flat_map(|i| (0..grid.ny()).map(move |j| (i, j)))
        .map(|(i, j)| (1.0 + shell_radius(grid.xi(i), grid.q(j)).powi(2)).powf(s))
        .collect();
    let spec = u.modulation_spectrum();
    let mut acc = 0.0;
    for m in 0..u.nt {
        let wt = (1.0 + u.sigma(m).powi(2)).powf(b);
        let slice = &spec[m * len..(m + 1) * len];
        acc += wt * slice.iter().zip(&spatial).map(|(z, ws)| ws * z.norm_sqr()).sum::<f64>();
    }
    (acc * 2.0 * TIME_WINDOW * grid.area()).sqrt()
}

/// `||u||_{L^p_{txy}}` by the rectangle rule in time and grid quadrature
/// in space. Exact in space when the grid resolves `|u|^p`.
pub fn spacetime_lebesgue_norm(u: &SpaceTimeField, p: f64) -> f64 {
    let sum: f64 = (0..u.nt)
        .into_par_iter()
        .map(|n| spectral::lebesgue_norm(&u.slice(n), p).powf(p))
        .collect::<Vec<_>>()
        .iter()
        .sum();
    (sum * u.dt()).powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::analysis::project_spatial;

    fn smooth_datum(grid: &Grid) -> Field {
        Field::from_fn(grid, |x, y| (-(x * x)).exp() * (1.0 + 0.5 * (2.0 * std::f64::consts::PI * y).cos()))
    }

    #[test]
    fn slices_round_trip_through_interaction_picture() {
        let g = Grid::cylinder(6.0, 64, 8).unwrap();
        let u = SpaceTimeField::from_free_wave(&smooth_datum(&g), 16).unwrap();
        let slices: Vec<Field> = (0..16).map(|n| u.slice(n)).collect();
        let v = SpaceTimeField::from_slices(&slices).unwrap();
        let err = u.add(&v.scaled(-1.0)).unwrap().l2_norm();
        assert!(err < 1e-13 * u.l2_norm());
    }

    #[test]
    fn zero_exponents_give_l2() {
        let g = Grid::cylinder(6.0, 64, 8).unwrap();
        let u = SpaceTimeField::from_free_wave(&smooth_datum(&g), 64).unwrap();
        let a = xsb_norm(&u, 0.0, 0.0);
        let b = spacetime_lebesgue_norm(&u, 2.0);
        assert!((a - b).abs() < 1e-10 * b, "{a} {b}");
        assert!((xsb_norm(&u.scaled(-3.0), 0.4, 0.3) - 3.0 * xsb_norm(&u, 0.4, 0.3)).abs() < 1e-12 * a);
        assert!(xsb_norm(&u, 0.5, 0.0) > xsb_norm(&u, 0.2, 0.0));
        assert!(xsb_norm(&u, 0.0, 0.5) > xsb_norm(&u, 0.0, 0.2));
    }

    #[test]
    fn free_wave_has_low_modulation() {
        let g = Grid::cylinder(6.0, 64, 8).unwrap();
        let u = SpaceTimeField::from_free_wave(&smooth_datum(&g), 256).unwrap();
        let low = (0..=2)
            .map(|e| project_modulation(&u, 1 << e).unwrap())
            .fold(None::<SpaceTimeField>, |acc, q| Some(match acc {
                None => q,
                Some(a) => a.add(&q).unwrap(),
            }))
            .unwrap();
        let frac = (low.l2_norm() / u.l2_norm()).powi(2);
        assert!(frac > 0.9, "{frac}");
        assert!(u.modulation_mass_fraction(5.0) > 0.9);
    }

    #[test]
    fn modulation_projectors_telescope_on_band_limited_data() {
        let g = Grid::cylinder(4.0, 16, 4).unwrap();
        let nt = 64;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let len = g.len();
        let mut spec = vec![Complex64::new(0.0, 0.0); nt * len];
        for m in 0..nt {
            let sigma = std::f64::consts::PI * signed_index(m, nt) as f64 / TIME_WINDOW;
            if sigma.abs() > 18.0 {
                continue;
            }
            for idx in 0..len {
                spec[m * len + idx] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        // Hermitian symmetry in (tau, xi, q) for a real field.
        let mut sym = spec.clone();
        for m in 0..nt {
            let mm = (nt - m) % nt;
            for i in 0..g.nx() {
                for j in 0..g.ny() {
                    let a = m * len + g.index(i, j);
                    let b = mm * len + g.index((g.nx() - i) % g.nx(), (g.ny() - j) % g.ny());
                    sym[a] = 0.5 * (spec[a] + spec[b].conj());
                }
            }
        }
        let u = SpaceTimeField::from_modulation_spectrum(&g, nt, sym).unwrap();
        let mut sum = project_modulation(&u, 1).unwrap();
        for e in 1..=4 {
            sum = sum.add(&project_modulation(&u, 1 << e).unwrap()).unwrap();
        }
        let err = sum.add(&u.scaled(-1.0)).unwrap().l2_norm();
        assert!(err < 1e-10 * u.l2_norm(), "{err:e}");
        assert!(matches!(project_modulation(&u, 64), Err(AnalysisError::ResolutionError { .. })));
    }

    #[test]
    fn single_tone_passes_its_shell_only() {
        let g = Grid::cylinder(std::f64::consts::PI, 8, 4).unwrap();
        let nt = 128;
        let len = g.len();
        let mut spec = vec![Complex64::new(0.0, 0.0); nt * len];
        // Interaction-picture tone at modulation 7 pi / 2 on (xi, q) = (1, 0) and its mirror.
        let m = 7;
        let sigma = std::f64::consts::PI * m as f64 / TIME_WINDOW;
        let (i, j) = (1usize, 0usize);
        spec[m * len + g.index(i, j)] = Complex64::new(1.0, 0.0);
        spec[(nt - m) * len + g.index(g.nx() - 1, 0)] = Complex64::new(1.0, 0.0);
        let u = SpaceTimeField::from_modulation_spectrum(&g, nt, spec).unwrap();
        for e in 0..=5u32 {
            let l = 1u64 << e;
            let kept = project_modulation(&u, l).unwrap().l2_norm() / u.l2_norm();
            let expected = dyadic_multiplier(l, sigma);
            assert!((kept - expected).abs() < 1e-12, "L={l}: {kept} vs {expected}");
        }
    }

    #[test]
    fn spatial_projection_commutes_with_slicing() {
        let g = Grid::cylinder(6.0, 64, 8).unwrap();
        let u = SpaceTimeField::from_free_wave(&smooth_datum(&g), 16).unwrap();
        let p = project_spatial(&u, 2).unwrap();
        let direct = project_spatial(&u.slice(5), 2).unwrap();
        let err = p.slice(5).add_scaled(&direct, -1.0).unwrap().max_abs();
        assert!(err < 1e-14);
    }
}
