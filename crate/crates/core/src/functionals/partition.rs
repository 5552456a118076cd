use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::FunctionalsError;
use crate::cutoff::smooth_step_jet;

/// Transition profile `s: [0, 1] -> [0, 1]` used on `[1/4, 1/3]` and its
/// mirror image.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionProfile {
    /// `exp(-1/t)` mollifier; C-infinity.
    #[default]
    Mollified,
    /// `(1 - cos(pi t)) / 2`; C^1 at the junctions.
    CosineBump,
    /// `10 t^3 - 15 t^4 + 6 t^5`; C^2 at the junctions.
    PolynomialBump,
}

impl PartitionProfile {
    fn jet(self, t: f64) -> (f64, f64, f64) {
        if t <= 0.0 {
            return (0.0, 0.0, 0.0);
        }
        if t >= 1.0 {
            return (1.0, 0.0, 0.0);
        }
        match self {
            PartitionProfile::Mollified => smooth_step_jet(t),
            PartitionProfile::CosineBump => (
                0.5 * (1.0 - (PI * t).cos()),
                0.5 * PI * (PI * t).sin(),
                0.5 * PI * PI * (PI * t).cos(),
            ),
            PartitionProfile::PolynomialBump => (
                t * t * t * (10.0 - 15.0 * t + 6.0 * t * t),
                30.0 * t * t * (1.0 - t) * (1.0 - t),
                60.0 * t * (1.0 - t) * (1.0 - 2.0 * t),
            ),
        }
    }

    /// Endpoint mismatch of value and slope against the constant states.
    fn junction_defect(self) -> f64 {
        let eps = 1e-9;
        let (a0, a1, _) = self.jet(eps);
        let (b0, b1, _) = self.jet(1.0 - eps);
        a0.abs().max(a1.abs()).max((b0 - 1.0).abs()).max(b1.abs())
    }
}

const RISE_START: f64 = 0.25;
const RISE_END: f64 = 1.0 / 3.0;
const RISE_RATE: f64 = 12.0;
const MIN_POINTS: usize = 48;

/// Angle `theta = (pi/2) rho(y)` with its first two derivatives, where
/// `rho` vanishes off `[1/4, 3/4]` and equals 1 on `[1/3, 2/3]`.
fn angle_jet(profile: PartitionProfile, y: f64) -> (f64, f64, f64) {
    let y = y.rem_euclid(1.0);
    if (RISE_END..=1.0 - RISE_END).contains(&y) {
        return (FRAC_PI_2, 0.0, 0.0);
    }
    if !(RISE_START..=1.0 - RISE_START).contains(&y) {
        return (0.0, 0.0, 0.0);
    }
    let (s, s1, s2, dir) = if y <= 0.5 {
        let (s, s1, s2) = profile.jet(RISE_RATE * (y - RISE_START));
        (s, s1, s2, 1.0)
    } else {
        let (s, s1, s2) = profile.jet(RISE_RATE * (1.0 - RISE_START - y));
        (s, s1, s2, -1.0)
    };
    (
        FRAC_PI_2 * s,
        FRAC_PI_2 * RISE_RATE * dir * s1,
        FRAC_PI_2 * RISE_RATE * RISE_RATE * s2,
    )
}

/// Partition of unity `eta1^2 + eta2^2 = 1` on the unit torus sampled on a
/// uniform y-grid, with the potentials
/// `H_j = -½ (eta_j^2)'' + (eta_j')^2` and `c_bound = max (H_1 + H_2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionChoice {
    pub profile: PartitionProfile,
    pub points: usize,
    pub eta1: Vec<f64>,
    pub eta2: Vec<f64>,
    pub d_eta1: Vec<f64>,
    pub d_eta2: Vec<f64>,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
    pub c_bound: f64,
}

impl PartitionChoice {
    pub fn y(&self, j: usize) -> f64 {
        j as f64 / self.points as f64
    }

    /// `max |eta1^2 + eta2^2 - 1|`.
    pub fn unity_defect(&self) -> f64 {
        self.eta1
            .iter()
            .zip(&self.eta2)
            .map(|(a, b)| (a * a + b * b - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max |H_1 + H_2 - (eta1')^2 - (eta2')^2|`.
    pub fn cancellation_defect(&self) -> f64 {
        (0..self.points)
            .map(|j| {
                let lhs = self.h1[j] + self.h2[j];
                let rhs = self.d_eta1[j].powi(2) + self.d_eta2[j].powi(2);
                (lhs - rhs).abs()
            })
            .fold(0.0, f64::max)
    }

    /// The partition with the roles of `eta1` and `eta2` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            eta1: self.eta2.clone(),
            eta2: self.eta1.clone(),
            d_eta1: self.d_eta2.clone(),
            d_eta2: self.d_eta1.clone(),
            h1: self.h2.clone(),
            h2: self.h1.clone(),
            c_bound: self
                .h2
                .iter()
                .zip(&self.h1)
                .map(|(a, b)| a + b)
                .fold(f64::NEG_INFINITY, f64::max),
            ..self.clone()
        }
    }
}

/// Samples the partition for `profile` on `points` uniform y-nodes and
/// checks its defining properties.
pub fn build_partition(profile: PartitionProfile, points: usize) -> Result<PartitionChoice, FunctionalsError> {
    if points < MIN_POINTS {
        return Err(FunctionalsError::ConstructionFailure(format!(
            "{points} y-points cannot resolve a transition of width 1/12 (need at least {MIN_POINTS})"
        )));
    }
    if profile.junction_defect() > 1e-6 {
        return Err(FunctionalsError::ConstructionFailure(format!(
            "{profile:?} transition is not C^1 at its junctions"
        )));
    }
    let n = points;
    let mut out = PartitionChoice {
        profile,
        points: n,
        eta1: Vec::with_capacity(n),
        eta2: Vec::with_capacity(n),
        d_eta1: Vec::with_capacity(n),
        d_eta2: Vec::with_capacity(n),
        h1: Vec::with_capacity(n),
        h2: Vec::with_capacity(n),
        c_bound: f64::NEG_INFINITY,
    };
    for j in 0..n {
        let y = j as f64 / n as f64;
        let (th, th1, th2) = angle_jet(profile, y);
        let (s, c) = th.sin_cos();
        let (s2, c2) = (2.0 * th).sin_cos();
        // (eta1^2)'' = 2 cos(2 theta) theta'^2 + sin(2 theta) theta''.
        let dd_sq1 = 2.0 * c2 * th1 * th1 + s2 * th2;
        let (d1, d2) = (c * th1, -s * th1);
        let h1 = -0.5 * dd_sq1 + d1 * d1;
        let h2 = 0.5 * dd_sq1 + d2 * d2;
        out.eta1.push(s);
        out.eta2.push(c);
        out.d_eta1.push(d1);
        out.d_eta2.push(d2);
        out.h1.push(h1);
        out.h2.push(h2);
        out.c_bound = out.c_bound.max(h1 + h2);
    }
    for j in 0..n {
        let y = out.y(j);
        let outside = !(RISE_START..=1.0 - RISE_START).contains(&y);
        let plateau = (RISE_END..=1.0 - RISE_END).contains(&y);
        if (outside && out.eta1[j] != 0.0) || (plateau && out.eta1[j] != 1.0) {
            return Err(FunctionalsError::ConstructionFailure(format!(
                "support constraint violated at y = {y}"
            )));
        }
        if out.eta1[j] < 0.0 || out.eta2[j] < 0.0 {
            return Err(FunctionalsError::ConstructionFailure(format!("negative cutoff at y = {y}")));
        }
    }
    if out.unity_defect() >= 1e-12 {
        return Err(FunctionalsError::ConstructionFailure(format!(
            "eta1^2 + eta2^2 deviates from 1 by {:e}",
            out.unity_defect()
        )));
    }
    if out.cancellation_defect() >= 1e-10 * out.c_bound.max(1.0) {
        return Err(FunctionalsError::ConstructionFailure(format!(
            "potential cancellation defect {:e}",
            out.cancellation_defect()
        )));
    }
    if !(out.c_bound > 0.0) || !out.c_bound.is_finite() {
        return Err(FunctionalsError::ConstructionFailure(format!("c_bound = {}", out.c_bound)));
    }
    Ok(out)
}

/// `c_bound` of the default partition on 512 points.
pub fn default_cylinder_constant() -> f64 {
    build_partition(PartitionProfile::Mollified, 512)
        .expect("default partition is valid")
        .c_bound
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [PartitionProfile; 3] = [
        PartitionProfile::Mollified,
        PartitionProfile::CosineBump,
        PartitionProfile::PolynomialBump,
    ];

    #[test]
    fn invariants_hold_for_every_profile() {
        for p in ALL {
            let part = build_partition(p, 256).unwrap();
            assert!(part.unity_defect() < 1e-12);
            assert!(part.cancellation_defect() < 1e-10 * part.c_bound);
            assert!(part.c_bound > 0.0);
        }
    }

    #[test]
    fn default_constant_is_pinned_and_stable_under_refinement() {
        let coarse = build_partition(PartitionProfile::Mollified, 256).unwrap().c_bound;
        let fine = build_partition(PartitionProfile::Mollified, 512).unwrap().c_bound;
        assert!((coarse - fine).abs() < 0.01 * fine);
        // sup theta'^2 = (pi/2 * 12 * s'(1/2))^2 with s'(1/2) = 2.
        let sup = (12.0 * PI).powi(2);
        assert!(fine <= sup && fine > (1.0 - 1e-3) * sup, "{fine}");
        assert_eq!(default_cylinder_constant(), fine);
    }

    #[test]
    fn closed_form_bounds_of_alternative_profiles() {
        let cos = build_partition(PartitionProfile::CosineBump, 512).unwrap().c_bound;
        let sup = (3.0 * PI * PI).powi(2);
        assert!(cos <= sup && cos > (1.0 - 1e-3) * sup, "{cos}");
        let poly = build_partition(PartitionProfile::PolynomialBump, 512).unwrap().c_bound;
        let sup = (11.25 * PI).powi(2);
        assert!(poly <= sup && poly > (1.0 - 1e-3) * sup, "{poly}");
    }

    #[test]
    fn plateau_has_zero_potential() {
        let part = build_partition(PartitionProfile::Mollified, 240).unwrap();
        for j in 0..part.points {
            let y = part.y(j);
            if (1.0 / 3.0..=2.0 / 3.0).contains(&y) {
                assert_eq!(part.eta1[j], 1.0);
                assert_eq!(part.h1[j], 0.0);
            }
        }
    }

    #[test]
    fn swap_preserves_bound() {
        let part = build_partition(PartitionProfile::PolynomialBump, 128).unwrap();
        let sw = part.swapped();
        assert_eq!(sw.c_bound, part.c_bound);
        assert_eq!(sw.eta1, part.eta2);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        assert!(matches!(
            build_partition(PartitionProfile::Mollified, 32),
            Err(FunctionalsError::ConstructionFailure(_))
        ));
    }
}
