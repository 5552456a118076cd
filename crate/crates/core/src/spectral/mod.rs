//! Spectral discretization of the cylinder: grids, fields, derivative
//! operators, norms and dealiased pointwise powers.

mod fft;
mod field;
mod grid;
pub mod snapshot;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

pub(crate) use fft::{fft2, plan, signed_index, slot};
pub use field::{forward_transform, inverse_transform, Field};
pub use grid::Grid;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("array length {found} does not match grid size {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("snapshot: {0}")]
    BadSnapshot(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fourier multiplier `(i xi)^ox (i q)^oy` at storage slot `(i, j)`, with the
/// unpaired Nyquist slot zeroed along any direction of odd order.
pub fn derivative_symbol(grid: &Grid, order_x: u32, order_y: u32, i: usize, j: usize) -> Complex64 {
    if (order_x % 2 == 1 && grid.is_nyquist_x(i)) || (order_y % 2 == 1 && grid.is_nyquist_y(j)) {
        return ZERO;
    }
    let ix = Complex64::new(0.0, grid.xi(i)).powu(order_x);
    let iy = Complex64::new(0.0, grid.q(j)).powu(order_y);
    ix * iy
}

/// Applies a Fourier multiplier slot by slot.
pub fn apply_multiplier(f: &Field, m: impl Fn(usize, usize) -> Complex64) -> Field {
    let grid = f.grid();
    let c = f.coeffs();
    let mut out = Vec::with_capacity(c.len());
    for i in 0..grid.nx() {
        for j in 0..grid.ny() {
            out.push(c[grid.index(i, j)] * m(i, j));
        }
    }
    Field::from_coeffs(grid, out).expect("same grid")
}

/// Spectral partial derivative `d_x^{order_x} d_y^{order_y} f`.
///
/// Orders above 3 are not supported.
pub fn derivative(f: &Field, order_x: u32, order_y: u32) -> Field {
    assert!(order_x <= 3 && order_y <= 3, "derivative order must be <= 3");
    let grid = f.grid().clone();
    apply_multiplier(f, |i, j| derivative_symbol(&grid, order_x, order_y, i, j))
}

/// Laplacian `d_xx + d_yy`.
pub fn laplacian(f: &Field) -> Field {
    let grid = f.grid().clone();
    apply_multiplier(f, |i, j| {
        let (xi, q) = (grid.xi(i), grid.q(j));
        Complex64::new(-(xi * xi + q * q), 0.0)
    })
}

/// Padding factor used for a degree-`p` product: `ceil((p + 1) / 2)`.
pub fn padding_factor(p: u32) -> usize {
    (p as usize + 2) / 2
}

/// Target slots of one coarse index in a padded spectrum. The unpaired
/// Nyquist coefficient is split evenly between `-n/2` and `+n/2`.
fn pad_targets(i: usize, n: usize, big: usize) -> ([(usize, f64); 2], usize) {
    if i == n / 2 && big > n {
        let h = (n / 2) as i64;
        ([(slot(-h, big), 0.5), (slot(h, big), 0.5)], 2)
    } else {
        ([(slot(signed_index(i, n), big), 1.0), (0, 0.0)], 1)
    }
}

/// Trigonometric interpolant of `coeffs` sampled on a grid refined by
/// `factor` in each direction.
pub(crate) fn upsample(grid: &Grid, coeffs: &[Complex64], factor: usize) -> (Vec<Complex64>, usize, usize) {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (mx, my) = (factor * nx, factor * ny);
    let mut big = vec![ZERO; mx * my];
    for i in 0..nx {
        let (tx, nx_t) = pad_targets(i, nx, mx);
        for j in 0..ny {
            let (ty, ny_t) = pad_targets(j, ny, my);
            let c = coeffs[grid.index(i, j)];
            for &(bi, wx) in &tx[..nx_t] {
                for &(bj, wy) in &ty[..ny_t] {
                    big[bi * my + bj] += c * (wx * wy);
                }
            }
        }
    }
    fft2(&mut big, mx, my, true);
    (big, mx, my)
}

/// Truncates a padded, normalized spectrum back to `grid`, folding the two
/// padded Nyquist slots into the coarse one.
fn truncate(grid: &Grid, big: &[Complex64], mx: usize, my: usize) -> Vec<Complex64> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut out = vec![ZERO; nx * ny];
    for i in 0..nx {
        let (tx, nx_t) = pad_targets(i, nx, mx);
        for j in 0..ny {
            let (ty, ny_t) = pad_targets(j, ny, my);
            let mut acc = ZERO;
            for &(bi, _) in &tx[..nx_t] {
                for &(bj, _) in &ty[..ny_t] {
                    acc += big[bi * my + bj];
                }
            }
            out[grid.index(i, j)] = acc;
        }
    }
    out
}

/// Coefficients of the dealiased `p`-th power of the field whose
/// coefficients are `coeffs`.
pub fn dealiased_power_coeffs(grid: &Grid, coeffs: &[Complex64], p: u32) -> Vec<Complex64> {
    dealiased_power_with_max(grid, coeffs, p).0
}

/// As [`dealiased_power_coeffs`], also returning the largest `|u|` seen on
/// the padded grid.
pub(crate) fn dealiased_power_with_max(grid: &Grid, coeffs: &[Complex64], p: u32) -> (Vec<Complex64>, f64) {
    assert!((2..=8).contains(&p), "dealiased power degree must be in 2..=8");
    let factor = padding_factor(p);
    let (mut big, mx, my) = upsample(grid, coeffs, factor);
    let pi = p as i32;
    let mut max = 0.0_f64;
    for z in big.iter_mut() {
        max = max.max(z.re.abs());
        *z = Complex64::new(z.re.powi(pi), 0.0);
    }
    fft2(&mut big, mx, my, false);
    let scale = 1.0 / (mx * my) as f64;
    big.iter_mut().for_each(|z| *z *= scale);
    (truncate(grid, &big, mx, my), max)
}

/// Pointwise `f^p` evaluated on a zero-padded grid and truncated back.
pub fn dealiased_power(f: &Field, p: u32) -> Field {
    let c = f.coeffs();
    Field::from_coeffs(f.grid(), dealiased_power_coeffs(f.grid(), &c, p)).expect("same grid")
}

/// Exact quadrature of `u^p` for the trigonometric interpolant of `f`.
pub fn integral_of_power(f: &Field, p: u32) -> f64 {
    if p == 0 {
        return f.grid().area();
    }
    let grid = f.grid();
    let factor = p as usize / 2 + 1;
    let c = f.coeffs();
    let (big, mx, my) = upsample(grid, &c, factor);
    let pi = p as i32;
    let sum: f64 = big.iter().map(|z| z.re.powi(pi)).sum();
    sum * grid.area() / (mx * my) as f64
}

/// Quadrature of `|u|^p` on the grid refined by `p/2 + 1`. Exact for even
/// `p`; spectrally accurate otherwise.
pub fn integral_of_abs_power(f: &Field, p: u32) -> f64 {
    if p % 2 == 0 {
        return integral_of_power(f, p);
    }
    let grid = f.grid();
    let factor = p as usize / 2 + 1;
    let c = f.coeffs();
    let (big, mx, my) = upsample(grid, &c, factor);
    let pi = p as i32;
    let sum: f64 = big.iter().map(|z| z.re.abs().powi(pi)).sum();
    sum * grid.area() / (mx * my) as f64
}

/// `∫ f dx dy` by the uniform rule.
pub fn integral(f: &Field) -> f64 {
    f.values().iter().sum::<f64>() * f.grid().cell()
}

/// `∫ f g dx dy` by the uniform rule.
pub fn inner(f: &Field, g: &Field) -> f64 {
    let (a, b) = (f.values(), g.values());
    a.iter().zip(b.iter()).map(|(u, v)| u * v).sum::<f64>() * f.grid().cell()
}

/// `L^p` norm by quadrature; `p = f64::INFINITY` gives the maximum norm.
pub fn lebesgue_norm(f: &Field, p: f64) -> f64 {
    assert!(p >= 1.0, "Lebesgue exponent must be >= 1");
    if p.is_infinite() {
        return f.max_abs();
    }
    let v = f.values();
    let sum: f64 = if p == 2.0 {
        v.iter().map(|u| u * u).sum()
    } else {
        v.iter().map(|u| u.abs().powf(p)).sum()
    };
    (sum * f.grid().cell()).powf(1.0 / p)
}

/// `||f||_2^2` through Parseval.
pub fn l2_norm_sq_spectral(f: &Field) -> f64 {
    f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>() * f.grid().area()
}

/// `||grad f||_2^2` through Parseval. Nyquist slots are weighted as in
/// [`derivative`], so this equals `||d_x f||^2 + ||d_y f||^2` exactly.
pub fn grad_norm_sq(f: &Field) -> f64 {
    let grid = f.grid();
    let c = f.coeffs();
    let mut acc = 0.0;
    for i in 0..grid.nx() {
        let xi2 = if grid.is_nyquist_x(i) { 0.0 } else { grid.xi(i).powi(2) };
        for j in 0..grid.ny() {
            let q2 = if grid.is_nyquist_y(j) { 0.0 } else { grid.q(j).powi(2) };
            acc += (xi2 + q2) * c[grid.index(i, j)].norm_sqr();
        }
    }
    acc * grid.area()
}

pub fn sobolev_h1_seminorm(f: &Field) -> f64 {
    grad_norm_sq(f).sqrt()
}

/// `||f||_{H^s}` with weight `sqrt(1 + xi^2 + q^2)`.
pub fn sobolev_norm(f: &Field, s: f64) -> f64 {
    let grid = f.grid();
    let c = f.coeffs();
    let mut acc = 0.0;
    for i in 0..grid.nx() {
        let xi2 = grid.xi(i).powi(2);
        for j in 0..grid.ny() {
            let w = (1.0 + xi2 + grid.q(j).powi(2)).powf(s);
            acc += w * c[grid.index(i, j)].norm_sqr();
        }
    }
    (acc * grid.area()).sqrt()
}

/// Evaluates the trigonometric interpolant of `f` at an arbitrary point.
pub fn evaluate_at(f: &Field, x: f64, y: f64) -> f64 {
    let grid = f.grid();
    let c = f.coeffs();
    let (sx, sy) = (x + grid.half_length_x(), y - grid.y_origin());
    let ey: Vec<Complex64> = (0..grid.ny())
        .map(|j| Complex64::from_polar(1.0, grid.q(j) * sy))
        .collect();
    let mut acc = ZERO;
    for i in 0..grid.nx() {
        let row = &c[grid.index(i, 0)..grid.index(i, 0) + grid.ny()];
        let partial: Complex64 = row.iter().zip(&ey).map(|(a, b)| a * b).sum();
        acc += partial * Complex64::from_polar(1.0, grid.xi(i) * sx);
    }
    acc.re
}

/// Samples of the trigonometric interpolant of periodic `values` on a grid
/// refined by `factor`.
pub fn upsample_1d(values: &[f64], factor: usize) -> Vec<f64> {
    let n = values.len();
    let m = n * factor;
    let mut c: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    plan(n, false).process(&mut c);
    let mut big = vec![ZERO; m];
    for (i, z) in c.iter().enumerate() {
        let z = *z / n as f64;
        let (targets, count) = pad_targets(i, n, m);
        for &(b, w) in &targets[..count] {
            big[b] += z * w;
        }
    }
    plan(m, true).process(&mut big);
    big.into_iter().map(|z| z.re).collect()
}

/// Replaces `c(k)` by `(c(k) + conj c(-k)) / 2`.
pub fn hermitian_symmetrize(grid: &Grid, coeffs: &mut [Complex64]) {
    let (nx, ny) = (grid.nx(), grid.ny());
    let src = coeffs.to_vec();
    for i in 0..nx {
        let mi = slot(-signed_index(i, nx), nx);
        for j in 0..ny {
            let mj = slot(-signed_index(j, ny), ny);
            coeffs[grid.index(i, j)] = (src[grid.index(i, j)] + src[grid.index(mi, mj)].conj()) * 0.5;
        }
    }
}

/// Largest `|c(k) - conj c(-k)|`.
pub fn hermitian_defect(grid: &Grid, coeffs: &[Complex64]) -> f64 {
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut worst = 0.0_f64;
    for i in 0..nx {
        let mi = slot(-signed_index(i, nx), nx);
        for j in 0..ny {
            let mj = slot(-signed_index(j, ny), ny);
            worst = worst.max((coeffs[grid.index(i, j)] - coeffs[grid.index(mi, mj)].conj()).norm());
        }
    }
    worst
}

/// Random real field whose spectrum is supported on `|l| <= max_x`,
/// `|m| <= max_y` (signed indices), with Gaussian coefficients.
pub fn band_limited_random<R: Rng + ?Sized>(grid: &Grid, max_x: usize, max_y: usize, rng: &mut R) -> Field {
    assert!(max_x < grid.nx() / 2 && max_y < grid.ny() / 2, "band exceeds grid");
    let mut c = vec![ZERO; grid.len()];
    for l in -(max_x as i64)..=max_x as i64 {
        for m in -(max_y as i64)..=max_y as i64 {
            let re: f64 = rng.gen_range(-1.0..1.0);
            let im: f64 = rng.gen_range(-1.0..1.0);
            c[grid.index(slot(l, grid.nx()), slot(m, grid.ny()))] = Complex64::new(re, im);
        }
    }
    hermitian_symmetrize(grid, &mut c);
    let mut f = Field::from_coeffs(grid, c).expect("same grid");
    f.inverse_transform();
    f
}
