//! C-infinity transition functions built from `exp(-1/t)`.

/// Smooth step: 0 for `t <= 0`, 1 for `t >= 1`, strictly increasing between.
///
/// Written as the logistic function of `1/(1-t) - 1/t`, which equals
/// `e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)})` without underflow.
pub fn smooth_step(t: f64) -> f64 {
    smooth_step_jet(t).0
}

/// `(s, s', s'')` of [`smooth_step`].
pub fn smooth_step_jet(t: f64) -> (f64, f64, f64) {
    if t <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if t >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let u = 1.0 - t;
    let z = 1.0 / u - 1.0 / t;
    let e = (-z.abs()).exp();
    let sigma = if z >= 0.0 { 1.0 / (1.0 + e) } else { e / (1.0 + e) };
    // sigma (1 - sigma), evaluated without cancellation.
    let var = e / ((1.0 + e) * (1.0 + e));
    let dz = 1.0 / (u * u) + 1.0 / (t * t);
    let ddz = 2.0 / (u * u * u) - 2.0 / (t * t * t);
    let d1 = var * dz;
    let d2 = var * (1.0 - 2.0 * sigma) * dz * dz + var * ddz;
    (sigma, d1, d2)
}

/// Even bump equal to 1 on `[-plateau, plateau]` and vanishing outside
/// `(-support, support)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bump {
    pub plateau: f64,
    pub support: f64,
}

impl Bump {
    /// The time and frequency cutoff: plateau `5/4`, support `8/5`.
    pub const STANDARD: Bump = Bump {
        plateau: 1.25,
        support: 1.6,
    };

    pub fn eval(&self, t: f64) -> f64 {
        let a = t.abs();
        if a <= self.plateau {
            1.0
        } else if a >= self.support {
            0.0
        } else {
            smooth_step((self.support - a) / (self.support - self.plateau))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_endpoints_and_midpoint() {
        assert_eq!(smooth_step(-1.0), 0.0);
        assert_eq!(smooth_step(0.0), 0.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
        let (_, d1, d2) = smooth_step_jet(0.5);
        assert!((d1 - 2.0).abs() < 1e-14);
        assert!(d2.abs() < 1e-12);
    }

    #[test]
    fn step_symmetry() {
        for k in 1..100 {
            let t = k as f64 / 100.0;
            assert!((smooth_step(t) + smooth_step(1.0 - t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn jet_matches_finite_differences() {
        let h = 1e-5;
        for k in 1..20 {
            let t = k as f64 / 20.0;
            let (_, d1, d2) = smooth_step_jet(t);
            let fd1 = (smooth_step(t + h) - smooth_step(t - h)) / (2.0 * h);
            let fd2 = (smooth_step(t + h) - 2.0 * smooth_step(t) + smooth_step(t - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-7 * d1.abs().max(1.0), "t={t}");
            assert!((d2 - fd2).abs() < 1e-3 * d2.abs().max(1.0), "t={t}");
        }
    }

    #[test]
    fn standard_bump_support() {
        let b = Bump::STANDARD;
        assert_eq!(b.eval(1.25), 1.0);
        assert_eq!(b.eval(-1.0), 1.0);
        assert_eq!(b.eval(1.6), 0.0);
        assert_eq!(b.eval(-2.0), 0.0);
        let mid = b.eval(1.4);
        assert!(mid > 0.0 && mid < 1.0);
    }
}
