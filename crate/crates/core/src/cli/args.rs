use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::dynamics::{Sign, MAX_K};

fn positive(key: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("key `{key}`: must be positive and finite, got {v}")))
    }
}

fn nonnegative(key: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("key `{key}`: must be nonnegative and finite, got {v}")))
    }
}

fn even_points(key: &str, n: usize) -> Result<(), CliError> {
    if n >= 2 && n % 2 == 0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("key `{key}`: must be an even integer >= 2, got {n}")))
    }
}

fn order(key: &str, k: u32, min: u32) -> Result<(), CliError> {
    if (min..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(CliError::Config(format!("key `{key}`: must be in {min}..={MAX_K}, got {k}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Gaussian,
    LineSoliton,
    PerturbedSoliton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignArg {
    Focusing,
    Defocusing,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Focusing => Sign::Focusing,
            SignArg::Defocusing => Sign::Defocusing,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = SimulateArgs::default().preset)]
    pub preset: Preset,
    #[arg(long, default_value_t = SimulateArgs::default().k)]
    pub k: u32,
    /// Gaussian amplitude.
    #[arg(long, default_value_t = SimulateArgs::default().amplitude)]
    pub amplitude: f64,
    /// Gaussian x-width.
    #[arg(long, default_value_t = SimulateArgs::default().width)]
    pub width: f64,
    /// Gaussian transverse concentration.
    #[arg(long, default_value_t = SimulateArgs::default().sigma)]
    pub sigma: f64,
    /// Soliton speed.
    #[arg(long, default_value_t = SimulateArgs::default().c)]
    pub c: f64,
    /// Transverse perturbation size.
    #[arg(long, default_value_t = SimulateArgs::default().eps)]
    pub eps: f64,
    #[arg(long, default_value_t = SimulateArgs::default().dt)]
    pub dt: f64,
    #[arg(long, default_value_t = SimulateArgs::default().t_end)]
    pub t_end: f64,
    #[arg(long, default_value_t = SimulateArgs::default().lx)]
    pub lx: f64,
    #[arg(long, default_value_t = SimulateArgs::default().nx)]
    pub nx: usize,
    #[arg(long, default_value_t = SimulateArgs::default().ny)]
    pub ny: usize,
    #[arg(long, value_enum, default_value_t = SimulateArgs::default().sign)]
    pub sign: SignArg,
    /// Transverse constant used for `X(t)`.
    #[arg(long, default_value_t = SimulateArgs::default().c_kt)]
    pub c_kt: f64,
    #[arg(long, default_value_t = SimulateArgs::default().diagnostics_stride)]
    pub diagnostics_stride: usize,
    #[arg(long, default_value_t = SimulateArgs::default().snapshot_stride)]
    pub snapshot_stride: usize,
    #[arg(long, default_value = "gzk-out/simulate")]
    #[serde(skip_serializing)]
    pub out: PathBuf,
}

impl Default for SimulateArgs {
    fn default() -> Self {
        Self {
            preset: Preset::Gaussian,
            k: 2,
            amplitude: 1.0,
            width: 1.0,
            sigma: 10.0,
            c: 1.0,
            eps: 0.05,
            dt: 1e-3,
            t_end: 1.0,
            lx: 32.0,
            nx: 256,
            ny: 64,
            sign: SignArg::Focusing,
            c_kt: 0.0,
            diagnostics_stride: 10,
            snapshot_stride: 100,
            out: PathBuf::from("gzk-out/simulate"),
        }
    }
}

impl SimulateArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        order("k", self.k, 1)?;
        positive("amplitude", self.amplitude.abs())?;
        positive("width", self.width)?;
        positive("sigma", self.sigma)?;
        positive("c", self.c)?;
        nonnegative("eps", self.eps)?;
        positive("dt", self.dt)?;
        positive("t-end", self.t_end)?;
        positive("lx", self.lx)?;
        even_points("nx", self.nx)?;
        even_points("ny", self.ny)?;
        nonnegative("c-kt", self.c_kt)?;
        if self.diagnostics_stride == 0 {
            return Err(CliError::Config("key `diagnostics-stride`: must be positive".into()));
        }
        if self.snapshot_stride == 0 {
            return Err(CliError::Config("key `snapshot-stride`: must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct GroundStateArgs {
    #[arg(long, default_value_t = GroundStateArgs::default().k)]
    pub k: u32,
    /// Half side of the square box.
    #[arg(long = "L", default_value_t = GroundStateArgs::default().l)]
    #[serde(rename = "L")]
    pub l: f64,
    /// Points per direction.
    #[arg(long = "N", default_value_t = GroundStateArgs::default().n)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = GroundStateArgs::default().tol)]
    pub tol: f64,
    #[arg(long, default_value_t = GroundStateArgs::default().max_iter)]
    pub max_iter: usize,
    /// Also write the profile as a GZKF snapshot.
    #[arg(long, default_value_t = false)]
    pub profile: bool,
    #[arg(long, default_value = "gzk-out/groundstate")]
    #[serde(skip_serializing)]
    pub out: PathBuf,
}

impl Default for GroundStateArgs {
    fn default() -> Self {
        Self {
            k: 2,
            l: 20.0,
            n: 512,
            tol: 1e-10,
            max_iter: 1000,
            profile: false,
            out: PathBuf::from("gzk-out/groundstate"),
        }
    }
}

impl GroundStateArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        order("k", self.k, 1)?;
        positive("L", self.l)?;
        even_points("N", self.n)?;
        positive("tol", self.tol)?;
        if self.max_iter == 0 {
            return Err(CliError::Config("key `max-iter`: must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Datum {
    Gaussian,
    GroundState,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = ThresholdArgs::default().k)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = ThresholdArgs::default().datum)]
    pub datum: Datum,
    /// Gaussian amplitude, or multiplier of the rescaled ground state.
    #[arg(long, default_value_t = ThresholdArgs::default().amplitude)]
    pub amplitude: f64,
    #[arg(long, default_value_t = ThresholdArgs::default().width)]
    pub width: f64,
    #[arg(long, default_value_t = ThresholdArgs::default().sigma)]
    pub sigma: f64,
    /// Concentration of the ground-state datum `lambda Q(lambda x, lambda (y - 1/2))`.
    #[arg(long, default_value_t = ThresholdArgs::default().lambda)]
    pub lambda: f64,
    /// Rescale the datum so that `||u0|| = mass_fraction * ||Q_k||`.
    #[arg(long)]
    pub mass_fraction: Option<f64>,
    /// Transverse constant; the default partition bound when omitted.
    #[arg(long)]
    pub c_kt: Option<f64>,
    #[arg(long, default_value_t = ThresholdArgs::default().lx)]
    pub lx: f64,
    #[arg(long, default_value_t = ThresholdArgs::default().nx)]
    pub nx: usize,
    #[arg(long, default_value_t = ThresholdArgs::default().ny)]
    pub ny: usize,
    /// Points per direction of the ground-state solve.
    #[arg(long, default_value_t = ThresholdArgs::default().gs_points)]
    pub gs_points: usize,
    /// Evolve the datum and monitor the threshold bounds.
    #[arg(long, default_value_t = false)]
    pub simulate: bool,
    #[arg(long, default_value_t = ThresholdArgs::default().dt)]
    pub dt: f64,
    #[arg(long, default_value_t = ThresholdArgs::default().t_end)]
    pub t_end: f64,
    #[arg(long, default_value_t = ThresholdArgs::default().diagnostics_stride)]
    pub diagnostics_stride: usize,
    #[arg(long, default_value = "gzk-out/thresholds")]
    #[serde(skip_serializing)]
    pub out: PathBuf,
}

impl Default for ThresholdArgs {
    fn default() -> Self {
        Self {
            k: 3,
            datum: Datum::Gaussian,
            amplitude: 0.3,
            width: 1.0,
            sigma: 10.0,
            lambda: 1.0,
            mass_fraction: None,
            c_kt: None,
            lx: 32.0,
            nx: 256,
            ny: 64,
            gs_points: 512,
            simulate: false,
            dt: 1e-3,
            t_end: 1.0,
            diagnostics_stride: 10,
            out: PathBuf::from("gzk-out/thresholds"),
        }
    }
}

impl ThresholdArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        order("k", self.k, 2)?;
        positive("amplitude", self.amplitude.abs())?;
        positive("width", self.width)?;
        positive("sigma", self.sigma)?;
        positive("lambda", self.lambda)?;
        if let Some(f) = self.mass_fraction {
            positive("mass-fraction", f)?;
        }
        if let Some(c) = self.c_kt {
            nonnegative("c-kt", c)?;
        }
        positive("lx", self.lx)?;
        even_points("nx", self.nx)?;
        even_points("ny", self.ny)?;
        even_points("gs-points", self.gs_points)?;
        positive("dt", self.dt)?;
        positive("t-end", self.t_end)?;
        if self.diagnostics_stride == 0 {
            return Err(CliError::Config("key `diagnostics-stride`: must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct GnVerifyArgs {
    #[arg(long, default_value_t = GnVerifyArgs::default().k)]
    pub k: u32,
    #[arg(long, default_value_t = GnVerifyArgs::default().trials)]
    pub trials: usize,
    #[arg(long, default_value_t = GnVerifyArgs::default().seed)]
    pub seed: u64,
    /// Transverse constant; the default partition bound when omitted.
    #[arg(long)]
    pub c_kt: Option<f64>,
    /// Scales of the flat scan with the transverse constant switched off.
    #[arg(long, value_delimiter = ',', default_values_t = GnVerifyArgs::default().flat_lambdas)]
    pub flat_lambdas: Vec<f64>,
    /// Scales of the concentration scan.
    #[arg(long, value_delimiter = ',', default_values_t = GnVerifyArgs::default().concentration_lambdas)]
    pub concentration_lambdas: Vec<f64>,
    #[arg(long, default_value_t = GnVerifyArgs::default().gs_points)]
    pub gs_points: usize,
    #[arg(long, default_value = "gzk-out/gn-verify")]
    #[serde(skip_serializing)]
    pub out: PathBuf,
}

impl Default for GnVerifyArgs {
    fn default() -> Self {
        Self {
            k: 2,
            trials: 100,
            seed: 1,
            c_kt: None,
            flat_lambdas: vec![1.0, 0.5, 0.25, 0.125],
            concentration_lambdas: vec![4.0, 8.0, 16.0],
            gs_points: 512,
            out: PathBuf::from("gzk-out/gn-verify"),
        }
    }
}

impl GnVerifyArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        order("k", self.k, 1)?;
        if self.trials == 0 {
            return Err(CliError::Config("key `trials`: must be at least 1".into()));
        }
        if let Some(c) = self.c_kt {
            nonnegative("c-kt", c)?;
        }
        for &l in &self.flat_lambdas {
            positive("flat-lambdas", l)?;
        }
        for &l in &self.concentration_lambdas {
            positive("concentration-lambdas", l)?;
        }
        even_points("gs-points", self.gs_points)
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ProbeArgs {
    #[arg(long, default_value_t = ProbeArgs::default().seed)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_values_t = ProbeArgs::default().scales)]
    pub scales: Vec<u64>,
    #[arg(long, default_value_t = ProbeArgs::default().trials)]
    pub trials: usize,
    #[arg(long, default_value_t = ProbeArgs::default().s)]
    pub s: f64,
    #[arg(long, default_value_t = ProbeArgs::default().b)]
    pub b: f64,
    #[arg(long, default_value = "gzk-out/probe-strichartz")]
    #[serde(skip_serializing)]
    pub out: PathBuf,
}

impl Default for ProbeArgs {
    fn default() -> Self {
        Self {
            seed: 1,
            scales: vec![1, 2, 4, 8, 16, 32, 64],
            trials: 20,
            s: 1.0 / 6.0,
            b: 0.375,
            out: PathBuf::from("gzk-out/probe-strichartz"),
        }
    }
}

impl ProbeArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::Config("key `trials`: must be at least 1".into()));
        }
        if self.scales.len() < 2 {
            return Err(CliError::Config("key `scales`: at least two scales are required".into()));
        }
        if let Some(n) = self.scales.iter().find(|n| !n.is_power_of_two()) {
            return Err(CliError::Config(format!("key `scales`: {n} is not dyadic")));
        }
        if !self.s.is_finite() {
            return Err(CliError::Config("key `s`: must be finite".into()));
        }
        if !self.b.is_finite() {
            return Err(CliError::Config("key `b`: must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct SolitonArgs {
    #[arg(long, default_value_t = SolitonArgs::default().k)]
    pub k: u32,
    #[arg(long, default_value_t = SolitonArgs::default().c)]
    pub c: f64,
    #[arg(long, default_value_t = SolitonArgs::default().lx)]
    pub lx: f64,
    #[arg(long, default_value_t = SolitonArgs::default().nx)]
    pub nx: usize,
    /// Also propagate the soliton to `t-end` and measure the shape error.
    #[arg(long, default_value_t = SolitonArgs::default().t_end)]
    pub t_end: f64,
    #[arg(long, default_value_t = SolitonArgs::default().dt)]
    pub dt: f64,
    #[arg(long, default_value_t = SolitonArgs::default().ny)]
    pub ny: usize,
    #[arg(long, default_value = "gzk-out/soliton-test")]
    #[serde(skip_serializing)]
    pub out: PathBuf,
}

impl Default for SolitonArgs {
    fn default() -> Self {
        Self {
            k: 1,
            c: 1.0,
            lx: 32.0,
            nx: 512,
            t_end: 1.0,
            dt: 1e-3,
            ny: 16,
            out: PathBuf::from("gzk-out/soliton-test"),
        }
    }
}

impl SolitonArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        order("k", self.k, 1)?;
        positive("c", self.c)?;
        positive("lx", self.lx)?;
        even_points("nx", self.nx)?;
        even_points("ny", self.ny)?;
        nonnegative("t-end", self.t_end)?;
        positive("dt", self.dt)
    }
}
