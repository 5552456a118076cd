use serde::Serialize;

use super::{energy, mass, FunctionalsError};
use crate::dynamics::DiagnosticsRow;
use crate::groundstate::GroundState;
use crate::spectral::{self, Field};

const GUARD: f64 = 1e-12;

/// `a < b` with a relative guard band; equality is not strict.
pub fn strictly_less(a: f64, b: f64) -> bool {
    a < b - GUARD * a.abs().max(b.abs())
}

fn signed_pow(a: f64, e: f64) -> f64 {
    a.signum() * a.abs().powf(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    GlobalByTheorem,
    NotCovered,
}

/// Global-existence threshold quantities for one initial datum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub k: u32,
    pub mass: f64,
    pub energy: f64,
    pub grad_sq: f64,
    #[serde(rename = "C_kT")]
    pub c_kt: f64,
    #[serde(rename = "C_kR")]
    pub c_kr: f64,
    pub mass_q: f64,
    /// `2 H(u0) + C_T M(u0)`.
    #[serde(rename = "A_k")]
    pub a_k: f64,
    /// `2 C_R M(u0) / (k+2)`.
    #[serde(rename = "B_k")]
    pub b_k: f64,
    /// `(2 / (k B_k))^{2/(k-2)}`, the maximizer of `f(x) = x - B_k x^{k/2}`.
    pub x0: Option<f64>,
    /// `f(x0) = x0 (k-2)/k`.
    pub f_x0: Option<f64>,
    /// `||grad u0||^2 + C_T M(u0)`.
    #[serde(rename = "X0")]
    pub x_initial: f64,
    pub gr0_holds: Option<bool>,
    pub gr1_holds: Option<bool>,
    pub gr2_holds: Option<bool>,
    /// `A_k < f(x0)`.
    pub energy_below_max: Option<bool>,
    /// `X(0) < x0`.
    pub start_below_x0: Option<bool>,
    /// Whether `GR1 and GR2` imply both conditions above on this datum.
    pub implication_holds: bool,
    /// A-priori bound on `||grad u(t)||^2` for `k = 2` below the threshold mass.
    pub k2_gradient_bound: Option<f64>,
    pub verdict: Verdict,
}

/// `(2H + C_T M^2 / M_Q) / (1 - M / M_Q)` when `M < M_Q`.
pub fn k2_gradient_bound(mass: f64, energy: f64, c_kt: f64, mass_q: f64) -> Option<f64> {
    strictly_less(mass, mass_q).then(|| (2.0 * energy + c_kt * mass * mass / mass_q) / (1.0 - mass / mass_q))
}

pub fn threshold_report(u0: &Field, k: u32, gs: &GroundState, c_kt: f64) -> Result<ThresholdReport, FunctionalsError> {
    if k < 2 {
        return Err(FunctionalsError::InvalidOrder(k));
    }
    if gs.k != k {
        return Err(FunctionalsError::InvalidArgument(format!(
            "ground state has k = {} but report requested for k = {k}",
            gs.k
        )));
    }
    let kf = k as f64;
    let m = mass(u0);
    let h = energy(u0, k);
    let g = spectral::grad_norm_sq(u0);
    let c_kr = gs.sharp_constant;
    let a_k = 2.0 * h + c_kt * m;
    let b_k = 2.0 * c_kr * m / (kf + 2.0);
    let x_initial = g + c_kt * m;

    let mut report = ThresholdReport {
        k,
        mass: m,
        energy: h,
        grad_sq: g,
        c_kt,
        c_kr,
        mass_q: gs.mass_sq,
        a_k,
        b_k,
        x0: None,
        f_x0: None,
        x_initial,
        gr0_holds: None,
        gr1_holds: None,
        gr2_holds: None,
        energy_below_max: None,
        start_below_x0: None,
        implication_holds: true,
        k2_gradient_bound: None,
        verdict: Verdict::NotCovered,
    };

    if k == 2 {
        let gr0 = strictly_less(m.sqrt(), gs.mass_norm());
        report.gr0_holds = Some(gr0);
        report.k2_gradient_bound = k2_gradient_bound(m, h, c_kt, gs.mass_sq);
        if gr0 {
            report.verdict = Verdict::GlobalByTheorem;
        }
        return Ok(report);
    }

    let s = (kf - 2.0) / kf;
    let h_q = gs.energy();
    let gr1 = strictly_less(
        signed_pow(h + 0.5 * c_kt * m, s) * m.powf(1.0 - s),
        h_q.powf(s) * gs.mass_sq.powf(1.0 - s),
    );
    let gr2 = strictly_less(
        x_initial.powf(s / 2.0) * m.powf((1.0 - s) / 2.0),
        gs.grad_sq.powf(s / 2.0) * gs.mass_sq.powf((1.0 - s) / 2.0),
    );
    report.gr1_holds = Some(gr1);
    report.gr2_holds = Some(gr2);

    if b_k > 0.0 {
        let x0 = (2.0 / (kf * b_k)).powf(2.0 / (kf - 2.0));
        let f_x0 = x0 - b_k * x0.powf(kf / 2.0);
        let below_max = strictly_less(a_k, f_x0);
        let start_below = strictly_less(x_initial, x0);
        report.x0 = Some(x0);
        report.f_x0 = Some(f_x0);
        report.energy_below_max = Some(below_max);
        report.start_below_x0 = Some(start_below);
        report.implication_holds = !(gr1 && gr2) || (below_max && start_below);
    }
    if gr1 && gr2 {
        report.verdict = Verdict::GlobalByTheorem;
    }
    Ok(report)
}

/// `H(u0) + C_T M(u0)/2 - ((k-2)/(2k)) (||grad u0||^2 + C_T M(u0))`, which is
/// nonnegative whenever the gradient condition holds.
pub fn remark14_positivity_check(u0: &Field, k: u32, gs: &GroundState, c_kt: f64) -> Result<f64, FunctionalsError> {
    if k < 3 {
        return Err(FunctionalsError::InvalidOrder(k));
    }
    if gs.k != k {
        return Err(FunctionalsError::InvalidArgument(format!("ground state has k = {}", gs.k)));
    }
    let kf = k as f64;
    let m = mass(u0);
    let g = spectral::grad_norm_sq(u0);
    Ok(energy(u0, k) + 0.5 * c_kt * m - (kf - 2.0) / (2.0 * kf) * (g + c_kt * m))
}

/// Best sample of `f(x) = x - b x^{k/2}` on a log grid around `x0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FMaxSample {
    pub x_best: f64,
    pub f_best: f64,
    /// Ratio between consecutive grid points.
    pub cell_ratio: f64,
    /// Largest `f` on a wide log grid spanning six decades.
    pub f_wide: f64,
}

/// Samples `f` on `points` log-spaced nodes of `[x0 / 1.05, 1.05 x0]` and on
/// a wide grid `[x0 / 1000, 1000 x0]`.
pub fn sample_f_maximum(b: f64, k: u32, x0: f64, points: usize) -> FMaxSample {
    let half = k as f64 / 2.0;
    let f = |x: f64| x - b * x.powf(half);
    let sweep = |lo: f64, hi: f64| {
        let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
        (0..points)
            .map(|i| lo * ratio.powi(i as i32))
            .map(|x| (x, f(x)))
            .fold((f64::NAN, f64::NEG_INFINITY), |acc, p| if p.1 > acc.1 { p } else { acc })
    };
    let (x_best, f_best) = sweep(x0 / 1.05, x0 * 1.05);
    let (_, f_wide) = sweep(x0 * 1e-3, x0 * 1e3);
    FMaxSample {
        x_best,
        f_best,
        cell_ratio: 1.1025f64.powf(1.0 / (points - 1) as f64),
        f_wide,
    }
}

/// Outcome of checking recorded diagnostics against the threshold bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonitorOutcome {
    /// Smallest `bound - observed` over the run.
    pub margin: f64,
    pub bound: Option<f64>,
    pub violations: Vec<f64>,
}

/// For `k = 2`, compares `||grad u(t)||^2` with the a-priori bound; for
/// `k >= 3`, compares `X(t)` with `x0`. `rows` must carry `X_t` computed
/// with the report's `C_T`.
pub fn monitor_run(report: &ThresholdReport, rows: &[DiagnosticsRow]) -> MonitorOutcome {
    let (bound, observe): (Option<f64>, fn(&DiagnosticsRow) -> f64) = if report.k == 2 {
        (report.k2_gradient_bound, |r| r.grad_norm_sq)
    } else {
        (report.x0, |r| r.x_t)
    };
    let Some(b) = bound else {
        return MonitorOutcome {
            margin: f64::NEG_INFINITY,
            bound: None,
            violations: rows.iter().map(|r| r.t).collect(),
        };
    };
    let slack = if report.k == 2 { 1e-6 * b.abs().max(1.0) } else { 0.0 };
    let mut margin = f64::INFINITY;
    let mut violations = Vec::new();
    for r in rows {
        let v = observe(r);
        margin = margin.min(b - v);
        let ok = if report.k == 2 { v <= b + slack } else { v < b };
        if !ok {
            violations.push(r.t);
        }
    }
    MonitorOutcome {
        margin,
        bound: Some(b),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_band_rejects_equality() {
        assert!(!strictly_less(1.0, 1.0));
        assert!(!strictly_less(1.0, 1.0 + 1e-14));
        assert!(strictly_less(1.0, 1.0 + 1e-10));
    }

    #[test]
    fn f_is_maximized_at_x0() {
        for k in 3..=7u32 {
            let b = 0.37;
            let kf = k as f64;
            let x0 = (2.0 / (kf * b)).powf(2.0 / (kf - 2.0));
            let f_x0 = x0 - b * x0.powf(kf / 2.0);
            assert!((f_x0 - x0 * (kf - 2.0) / kf).abs() < 1e-12 * f_x0);
            let s = sample_f_maximum(b, k, x0, 10_000);
            assert!(s.f_best <= f_x0 * (1.0 + 1e-12));
            assert!((s.f_best - f_x0).abs() < 1e-10 * f_x0, "k={k}");
            assert!((s.x_best / x0).ln().abs() <= s.cell_ratio.ln());
            assert!(s.f_wide <= f_x0 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn k2_bound_requires_subcritical_mass() {
        assert!(k2_gradient_bound(11.7, 0.0, 1.0, 11.7).is_none());
        let b = k2_gradient_bound(0.81 * 11.7, 1.0, 0.0, 11.7).unwrap();
        assert!((b - 2.0 / 0.19).abs() < 1e-12);
    }
}
