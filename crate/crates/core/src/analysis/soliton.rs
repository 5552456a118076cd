use super::AnalysisError;
use crate::spectral::{self, Field, Grid};

/// `Q_c(x) = [(c (k+2)/2) sech^2(k sqrt(c) x / 2)]^{1/k}`.
pub fn line_soliton_value(c: f64, k: u32, x: f64) -> f64 {
    let kf = k as f64;
    let sech = 1.0 / (0.5 * kf * c.sqrt() * x).cosh();
    (0.5 * c * (kf + 2.0) * sech * sech).powf(1.0 / kf)
}

/// The y-independent line soliton of speed `c` sampled on `grid`.
pub fn line_soliton(c: f64, k: u32, grid: &Grid) -> Result<Field, AnalysisError> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(AnalysisError::InvalidArgument(format!("soliton speed must be positive, got {c}")));
    }
    if k == 0 {
        return Err(AnalysisError::InvalidArgument("k must be at least 1".into()));
    }
    let peak = line_soliton_value(c, k, 0.0);
    let edge = line_soliton_value(c, k, grid.half_length_x());
    if edge > 1e-12 * peak {
        return Err(AnalysisError::DomainTooSmall { ratio: edge / peak });
    }
    Ok(Field::from_fn(grid, |x, _| line_soliton_value(c, k, x)))
}

/// `||-Q'' + c Q - Q^{k+1}||_2` over the cylinder.
pub fn line_soliton_residual(q: &Field, c: f64, k: u32) -> f64 {
    let qxx = spectral::derivative(q, 2, 0);
    let (a, v) = (qxx.values(), q.values());
    let r: Vec<f64> = a
        .iter()
        .zip(v.iter())
        .map(|(d2, u)| -d2 + c * u - u.powi(k as i32 + 1))
        .collect();
    spectral::lebesgue_norm(&Field::from_values(q.grid(), r).expect("same grid"), 2.0)
}
