//! Time evolution of the gZK equation with an exponential integrator.
//!
//! In Fourier variables the equation reads
//! `v_t = i w(xi, q) v - s i xi F[u^{k+1}]` with `w = xi^3 + xi q^2`, where
//! `s = +1` is the focusing equation and `s = -1` its defocusing variant.
//! The stiff linear part is integrated exactly by [`linear_propagate`]; the
//! nonlinear part by the fourth-order ETD-RK4 scheme of Cox and Matthews,
//! with φ-functions evaluated by contour averaging (Kassam–Trefethen).

mod diagnostics;
mod etdrk4;
pub mod initial;

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectral::{self, Field, Grid, SpectralError};

pub use diagnostics::{diagnostics, read_diagnostics_csv, write_diagnostics_csv, DiagnosticsRow, DIAGNOSTICS_HEADER};
pub use etdrk4::Etdrk4;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Sign of the nonlinear term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// `u_t + d_x(u^{k+1}) + ... = 0`.
    #[default]
    Focusing,
    /// `u_t - d_x(u^{k+1}) + ... = 0`.
    Defocusing,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Focusing => 1.0,
            Sign::Defocusing => -1.0,
        }
    }
}

/// Largest supported nonlinearity power (`k + 1 <= 8` for dealiasing).
pub const MAX_K: u32 = 7;

/// Halting threshold on `||u||_inf`.
pub const BLOW_UP_LINF: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub k: u32,
    pub dt: f64,
    pub t_end: f64,
    pub half_length_x: f64,
    pub nx: usize,
    pub ny: usize,
    pub sign: Sign,
    pub snapshot_stride: usize,
    pub diagnostics_stride: usize,
    /// Transverse constant used for `X(t)` in the diagnostics.
    pub c_kt: f64,
    #[serde(skip)]
    pub snapshot_dir: Option<PathBuf>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            k: 2,
            dt: 1e-3,
            t_end: 1.0,
            half_length_x: 32.0,
            nx: 256,
            ny: 64,
            sign: Sign::Focusing,
            snapshot_stride: 100,
            diagnostics_stride: 10,
            c_kt: 0.0,
            snapshot_dir: None,
        }
    }
}

impl SimConfig {
    pub fn grid(&self) -> Result<Grid, DynamicsError> {
        Ok(Grid::cylinder(self.half_length_x, self.nx, self.ny)?)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let bad = |m: String| Err(DynamicsError::InvalidConfig(m));
        if self.k < 1 || self.k > MAX_K {
            return bad(format!("k must be in 1..={MAX_K}, got {}", self.k));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad(format!("t_end must be positive, got {}", self.t_end));
        }
        if self.snapshot_stride == 0 || self.diagnostics_stride == 0 {
            return bad("strides must be positive".into());
        }
        if !(self.c_kt.is_finite() && self.c_kt >= 0.0) {
            return bad(format!("c_kt must be nonnegative, got {}", self.c_kt));
        }
        let grid = self.grid()?;
        let wmax = grid.max_xi() * (grid.max_xi().powi(2) + grid.max_q().powi(2));
        if !(wmax * self.dt).is_finite() {
            return bad("propagator phase dt * max|w| is not finite".into());
        }
        Ok(())
    }

    /// Number of steps and the step actually used so that `n * dt = t_end`.
    pub fn steps(&self) -> (usize, f64) {
        let n = (self.t_end / self.dt).round().max(1.0) as usize;
        (n, self.t_end / n as f64)
    }
}

/// `w(xi, q) = xi^3 + xi q^2`.
pub fn dispersion_symbol(xi: f64, q: f64) -> f64 {
    xi * xi * xi + xi * q * q
}

/// Symbol of the linear flow on `grid` at slot `(i, j)`. The unpaired
/// x-Nyquist column carries no odd-in-xi phase.
pub(crate) fn grid_symbol(grid: &Grid, i: usize, j: usize) -> f64 {
    if grid.is_nyquist_x(i) {
        0.0
    } else {
        dispersion_symbol(grid.xi(i), grid.q(j))
    }
}

/// Free flow `e^{-t d_x Delta}`: multiplies every coefficient by `e^{i t w}`.
pub fn linear_propagate(u: &Field, t: f64) -> Field {
    let grid = u.grid().clone();
    spectral::apply_multiplier(u, |i, j| Complex64::from_polar(1.0, t * grid_symbol(&grid, i, j)))
}

/// `-s d_x(u^{k+1})` with a dealiased power.
pub fn nonlinear_rhs(u: &Field, k: u32, sign: Sign) -> Field {
    let grid = u.grid();
    let c = u.coeffs();
    let mut p = spectral::dealiased_power_coeffs(grid, &c, k + 1);
    let s = sign.value();
    for i in 0..grid.nx() {
        for j in 0..grid.ny() {
            let idx = grid.index(i, j);
            p[idx] *= -s * spectral::derivative_symbol(grid, 1, 0, i, j);
        }
    }
    Field::from_coeffs(grid, p).expect("same grid")
}

/// A single ETD-RK4 step of size `cfg.dt`.
pub fn step_etdrk4(u: &Field, cfg: &SimConfig) -> Result<Field, DynamicsError> {
    let stepper = Etdrk4::new(u.grid(), cfg.k, cfg.sign, cfg.dt);
    let (next, _) = stepper.step(&u.coeffs(), 0.0)?;
    Ok(Field::from_coeffs(u.grid(), next)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltReason {
    NonFinite,
    Threshold { linf: f64 },
}

/// Why and when a run stopped early.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halt {
    pub t_last_valid: f64,
    pub reason: HaltReason,
}

#[derive(Debug)]
pub struct Run {
    pub final_state: Field,
    pub final_time: f64,
    pub diagnostics: Vec<DiagnosticsRow>,
    pub snapshots: Vec<PathBuf>,
    pub halt: Option<Halt>,
}

impl Run {
    /// Converts an early halt into [`DynamicsError::NonFinite`].
    pub fn into_result(self) -> Result<Run, DynamicsError> {
        match &self.halt {
            Some(h) => Err(DynamicsError::NonFinite { t: h.t_last_valid }),
            None => Ok(self),
        }
    }
}

/// Integrates `u0` to `cfg.t_end`; see [`evolve_with`].
pub fn evolve(u0: &Field, cfg: &SimConfig) -> Result<Run, DynamicsError> {
    evolve_with(u0, cfg, |_, _| {})
}

/// Integrates `u0` to `cfg.t_end`, calling `observer` at every diagnostics
/// time (every `diagnostics_stride` steps, plus the final step).
///
/// The run halts early, keeping the last valid state, if a non-finite value
/// appears or `||u||_inf` exceeds [`BLOW_UP_LINF`]. Snapshots are written
/// to `cfg.snapshot_dir` every `snapshot_stride` steps when it is set.
pub fn evolve_with(
    u0: &Field,
    cfg: &SimConfig,
    mut observer: impl FnMut(&DiagnosticsRow, &Field),
) -> Result<Run, DynamicsError> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    if *u0.grid() != grid {
        return Err(DynamicsError::InvalidConfig("initial datum is not on the configured grid".into()));
    }
    let (n_steps, dt) = cfg.steps();
    let stepper = Etdrk4::new(&grid, cfg.k, cfg.sign, dt);
    let mass0 = spectral::l2_norm_sq_spectral(u0);

    let mut state: Vec<Complex64> = u0.coeffs().into_owned();
    let mut diagnostics_rows = Vec::new();
    let mut snapshots = Vec::new();
    let mut halt = None;
    let mut t = 0.0;
    let mut step = 0usize;

    loop {
        let at_diag = step % cfg.diagnostics_stride == 0 || step == n_steps;
        let at_snap = step % cfg.snapshot_stride == 0 || step == n_steps;
        if at_diag || at_snap {
            let field = Field::from_coeffs(&grid, state.clone())?;
            if at_diag {
                let row = diagnostics(&field, t, cfg.k, cfg.sign, cfg.c_kt, mass0);
                observer(&row, &field);
                diagnostics_rows.push(row);
            }
            if at_snap {
                if let Some(dir) = &cfg.snapshot_dir {
                    let path = dir.join(format!("snap_{step:08}.gzkf"));
                    spectral::snapshot::write_snapshot(&path, &field, t)?;
                    snapshots.push(path);
                }
            }
        }
        if step == n_steps {
            break;
        }
        match stepper.step(&state, t) {
            Ok((next, linf)) => {
                if linf > BLOW_UP_LINF {
                    halt = Some(Halt {
                        t_last_valid: t,
                        reason: HaltReason::Threshold { linf },
                    });
                    break;
                }
                state = next;
            }
            Err(DynamicsError::NonFinite { .. }) => {
                halt = Some(Halt {
                    t_last_valid: t,
                    reason: HaltReason::NonFinite,
                });
                break;
            }
            Err(e) => return Err(e),
        }
        step += 1;
        t = step as f64 * dt;
    }

    Ok(Run {
        final_state: Field::from_coeffs(&grid, state)?,
        final_time: t,
        diagnostics: diagnostics_rows,
        snapshots,
        halt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::band_limited_random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion_symbol(0.0, 3.0), 0.0);
        assert_eq!(dispersion_symbol(1.0, 0.0), 1.0);
        let two_pi = 2.0 * std::f64::consts::PI;
        let w = dispersion_symbol(2.0, two_pi);
        assert!((w - (8.0 + 2.0 * two_pi * two_pi)).abs() < 1e-12);
        assert!((w - 86.956_835_2).abs() < 1e-6);
    }

    fn random_field() -> Field {
        let g = Grid::cylinder(6.0, 32, 16).unwrap();
        band_limited_random(&g, 12, 6, &mut ChaCha8Rng::seed_from_u64(5))
    }

    #[test]
    fn propagator_identity_unitarity_group_law() {
        let u = random_field();
        let id = linear_propagate(&u, 0.0);
        let (a, b) = (u.coeffs(), id.coeffs());
        assert!(a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < 1e-15));

        let v = linear_propagate(&u, 0.37);
        let n0 = spectral::l2_norm_sq_spectral(&u);
        assert!((spectral::l2_norm_sq_spectral(&v) - n0).abs() < 1e-12 * n0);
        for (x, y) in u.coeffs().iter().zip(v.coeffs().iter()) {
            assert!((x.norm() - y.norm()).abs() <= 1e-13 * x.norm().max(1e-300));
        }
        assert!(v.imaginary_residue() < 1e-12 * v.max_abs());

        let two = linear_propagate(&linear_propagate(&u, 0.2), 0.3);
        let one = linear_propagate(&u, 0.5);
        let err = two
            .coeffs()
            .iter()
            .zip(one.coeffs().iter())
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()));
        assert!(err < 1e-12);
    }

    #[test]
    fn nonlinear_rhs_zero_and_symmetry() {
        let g = Grid::cylinder(8.0, 64, 8).unwrap();
        assert_eq!(nonlinear_rhs(&Field::zeros(&g), 2, Sign::Focusing).max_abs(), 0.0);
        let f = Field::from_fn(&g, |x, _| (-(x * x)).exp());
        let n = nonlinear_rhs(&f, 2, Sign::Focusing);
        let v = n.values();
        let mut spread = 0.0_f64;
        for i in 0..g.nx() {
            for j in 1..g.ny() {
                spread = spread.max((v[g.index(i, j)] - v[g.index(i, 0)]).abs());
            }
        }
        assert!(spread < 1e-14);
    }

    #[test]
    fn zero_datum_stays_zero() {
        let cfg = SimConfig {
            nx: 32,
            ny: 8,
            t_end: 0.01,
            ..SimConfig::default()
        };
        let u = Field::zeros(&cfg.grid().unwrap());
        let stepped = step_etdrk4(&u, &cfg).unwrap();
        assert_eq!(stepped.max_abs(), 0.0);
        let run = evolve(&u, &cfg).unwrap();
        assert!(run.halt.is_none());
        for row in &run.diagnostics {
            assert_eq!(row.mass, 0.0);
            assert_eq!(row.energy, 0.0);
            assert_eq!(row.grad_norm_sq, 0.0);
            assert_eq!(row.linf, 0.0);
            assert_eq!(row.x_t, 0.0);
        }
    }

    #[test]
    fn linear_stepper_matches_free_flow() {
        let u = random_field();
        let dt = 1e-3;
        let stepper = Etdrk4::new(u.grid(), 2, Sign::Focusing, dt).linear_only();
        let mut v = u.coeffs().into_owned();
        for n in 0..100 {
            v = stepper.step(&v, n as f64 * dt).unwrap().0;
        }
        let exact = linear_propagate(&u, 100.0 * dt);
        let err = exact
            .coeffs()
            .iter()
            .zip(&v)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()));
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn halts_on_blow_up() {
        // A large-amplitude focusing datum on a coarse grid with a huge step
        // leaves the stability region.
        let cfg = SimConfig {
            k: 4,
            dt: 0.5,
            t_end: 50.0,
            nx: 16,
            ny: 4,
            half_length_x: 4.0,
            ..SimConfig::default()
        };
        let g = cfg.grid().unwrap();
        let u = Field::from_fn(&g, |x, _| 5.0 * (-(x * x)).exp());
        let run = evolve(&u, &cfg).unwrap();
        let halt = run.halt.clone().expect("run should halt");
        assert!(halt.t_last_valid < cfg.t_end);
        assert!(run.into_result().is_err());
    }

    #[test]
    fn rejects_bad_config() {
        let mut cfg = SimConfig::default();
        cfg.k = 0;
        assert!(cfg.validate().is_err());
        cfg.k = 2;
        cfg.dt = -1.0;
        assert!(cfg.validate().is_err());
        cfg.dt = 1e-3;
        cfg.nx = 7;
        assert!(cfg.validate().is_err());
    }
}
