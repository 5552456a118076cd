use std::path::Path;

use serde::Serialize;

use super::args::{Datum, GnVerifyArgs, GroundStateArgs, Preset, ProbeArgs, SimulateArgs, SolitonArgs, ThresholdArgs};
use super::CliError;
use crate::analysis::{self, Exponents};
use crate::dynamics::{self, initial, DiagnosticsRow, Halt, Run, SimConfig, Sign};
use crate::functionals::{self, ScanPoint, SuiteGrid, ThresholdReport};
use crate::groundstate::{petviashvili_solve, GroundState, SolveOptions};
use crate::spectral::{self, snapshot::write_atomic, Field, Grid};

pub(super) const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub(super) const THRESHOLDS_FILE: &str = "thresholds.json";
pub(super) const LAMBDA_SCAN_FILE: &str = "lambda_scan.json";
pub(super) const PROBE_FILE: &str = "probe.json";

/// Grid of the flat Gagliardo–Nirenberg scan.
const FLAT_GRID: (f64, usize, usize) = (64.0, 1024, 16);
/// Grid of the concentration scan.
const CONCENTRATION_GRID: (f64, usize, usize) = (4.0, 1024, 256);

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())?;
    Ok(())
}

fn max_relative_drift(rows: &[DiagnosticsRow], pick: fn(&DiagnosticsRow) -> f64) -> f64 {
    let Some(first) = rows.first() else {
        return 0.0;
    };
    let base = pick(first);
    let scale = if base != 0.0 { base.abs() } else { 1.0 };
    rows.iter().map(|r| (pick(r) - base).abs() / scale).fold(0.0, f64::max)
}

/// Largest `max_y u - min_y u` over x, relative to `||u||_inf`.
fn transverse_variation(u: &Field) -> f64 {
    let g = u.grid();
    let v = u.values();
    let mut worst = 0.0f64;
    for i in 0..g.nx() {
        let row = (0..g.ny()).map(|j| v[g.index(i, j)]);
        let (lo, hi) = row.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        worst = worst.max(hi - lo);
    }
    let peak = u.max_abs();
    if peak > 0.0 {
        worst / peak
    } else {
        0.0
    }
}

/// Relative L² distance between `u` and the line soliton translated by `c t`.
fn soliton_shape_error(u: &Field, c: f64, k: u32, t: f64) -> f64 {
    let g = u.grid();
    let l = g.half_length_x();
    let exact = Field::from_fn(g, |x, _| {
        let s = (x - c * t + l).rem_euclid(2.0 * l) - l;
        analysis::line_soliton_value(c, k, s)
    });
    let diff = u.add_scaled(&exact, -1.0).expect("same grid");
    spectral::lebesgue_norm(&diff, 2.0) / spectral::lebesgue_norm(&exact, 2.0)
}

fn halt_error(halt: &Halt) -> CliError {
    CliError::Numeric(format!(
        "run halted at t = {} ({:?}); artifacts up to that time were written",
        halt.t_last_valid, halt.reason
    ))
}

#[derive(Serialize)]
struct SimulateSummary<'a> {
    command: &'static str,
    params: &'a SimulateArgs,
    steps: usize,
    dt: f64,
    final_time: f64,
    mass_initial: f64,
    mass_drift_rel: f64,
    energy_initial: f64,
    energy_drift_rel: f64,
    transverse_variation: f64,
    shape_error: Option<f64>,
    snapshots: usize,
    halt: Option<Halt>,
}

pub(super) fn simulate(a: &SimulateArgs) -> Result<String, CliError> {
    let cfg = SimConfig {
        k: a.k,
        dt: a.dt,
        t_end: a.t_end,
        half_length_x: a.lx,
        nx: a.nx,
        ny: a.ny,
        sign: a.sign.into(),
        snapshot_stride: a.snapshot_stride,
        diagnostics_stride: a.diagnostics_stride,
        c_kt: a.c_kt,
        snapshot_dir: Some(a.out.join("snapshots")),
    };
    cfg.validate()?;
    let grid = cfg.grid()?;
    let u0 = match a.preset {
        Preset::Gaussian => initial::gaussian_with_width(&grid, a.amplitude, a.width, a.sigma),
        Preset::LineSoliton => analysis::line_soliton(a.c, a.k, &grid)?,
        Preset::PerturbedSoliton => initial::perturbed_line_soliton(&grid, a.c, a.k, a.eps)?,
    };
    let run = dynamics::evolve(&u0, &cfg)?;
    dynamics::write_diagnostics_csv(&a.out.join(DIAGNOSTICS_FILE), &run.diagnostics)?;
    let (steps, dt) = cfg.steps();
    let shape_error = (a.preset == Preset::LineSoliton && cfg.sign == Sign::Focusing)
        .then(|| soliton_shape_error(&run.final_state, a.c, a.k, run.final_time));
    let summary = SimulateSummary {
        command: "simulate",
        params: a,
        steps,
        dt,
        final_time: run.final_time,
        mass_initial: run.diagnostics[0].mass,
        mass_drift_rel: max_relative_drift(&run.diagnostics, |r| r.mass),
        energy_initial: run.diagnostics[0].energy,
        energy_drift_rel: max_relative_drift(&run.diagnostics, |r| r.energy),
        transverse_variation: transverse_variation(&run.final_state),
        shape_error,
        snapshots: run.snapshots.len(),
        halt: run.halt.clone(),
    };
    write_json(&a.out.join("summary.json"), &summary)?;
    if let Some(h) = &run.halt {
        return Err(halt_error(h));
    }
    Ok(format!(
        "simulate: t = {:.6}, mass drift {:.3e}, energy drift {:.3e} -> {}",
        summary.final_time,
        summary.mass_drift_rel,
        summary.energy_drift_rel,
        a.out.display()
    ))
}

fn solve_ground_state(k: u32, points: usize) -> Result<GroundState, CliError> {
    let opts = SolveOptions {
        points,
        ..SolveOptions::default()
    };
    Ok(petviashvili_solve(k, &opts)?)
}

pub(super) fn groundstate(a: &GroundStateArgs) -> Result<String, CliError> {
    let opts = SolveOptions {
        half_length: a.l,
        points: a.n,
        tol: a.tol,
        max_iter: a.max_iter,
    };
    let gs = petviashvili_solve(a.k, &opts)?;
    let report = gs.report();
    write_json(&a.out.join("groundstate.json"), &report)?;
    if a.profile {
        spectral::snapshot::write_snapshot(&a.out.join("profile.gzkf"), &gs.profile, 0.0)?;
    }
    Ok(serde_json::to_string_pretty(&report)?)
}

fn threshold_datum(a: &ThresholdArgs, grid: &Grid, gs: &GroundState) -> Field {
    let u = match a.datum {
        Datum::Gaussian => initial::gaussian_with_width(grid, a.amplitude, a.width, a.sigma),
        Datum::GroundState => {
            let center = (0.0, grid.y_origin() + 0.5 * grid.length_y());
            gs.radial_profile().embed(grid, center, a.lambda, a.amplitude * a.lambda)
        }
    };
    match a.mass_fraction {
        Some(f) => u.scaled(f * gs.mass_norm() / functionals::mass(&u).sqrt()),
        None => u,
    }
}

#[derive(Serialize)]
struct ThresholdSummary<'a> {
    command: &'static str,
    params: &'a ThresholdArgs,
    report: ThresholdReport,
    positivity_margin: Option<f64>,
}

#[derive(Serialize)]
struct MonitorSummary {
    k: u32,
    final_time: f64,
    #[serde(flatten)]
    outcome: functionals::MonitorOutcome,
    halt: Option<Halt>,
}

pub(super) fn thresholds(a: &ThresholdArgs) -> Result<String, CliError> {
    let c_kt = a.c_kt.unwrap_or_else(functionals::default_cylinder_constant);
    let grid = Grid::cylinder(a.lx, a.nx, a.ny)?;
    let cfg = SimConfig {
        k: a.k,
        dt: a.dt,
        t_end: a.t_end,
        half_length_x: a.lx,
        nx: a.nx,
        ny: a.ny,
        sign: Sign::Focusing,
        snapshot_stride: usize::MAX,
        diagnostics_stride: a.diagnostics_stride,
        c_kt,
        snapshot_dir: None,
    };
    if a.simulate {
        cfg.validate()?;
    }
    let gs = solve_ground_state(a.k, a.gs_points)?;
    let u0 = threshold_datum(a, &grid, &gs);
    let report = functionals::threshold_report(&u0, a.k, &gs, c_kt)?;
    let positivity_margin = if a.k >= 3 {
        Some(functionals::remark14_positivity_check(&u0, a.k, &gs, c_kt)?)
    } else {
        None
    };
    let summary = ThresholdSummary {
        command: "thresholds",
        params: a,
        report: report.clone(),
        positivity_margin,
    };
    write_json(&a.out.join(THRESHOLDS_FILE), &summary)?;
    let mut line = format!("thresholds: k = {}, verdict {:?}", a.k, report.verdict);
    if a.simulate {
        let run: Run = dynamics::evolve(&u0, &cfg)?;
        dynamics::write_diagnostics_csv(&a.out.join(DIAGNOSTICS_FILE), &run.diagnostics)?;
        let outcome = functionals::monitor_run(&report, &run.diagnostics);
        let violations = outcome.violations.len();
        let monitor = MonitorSummary {
            k: a.k,
            final_time: run.final_time,
            outcome,
            halt: run.halt.clone(),
        };
        write_json(&a.out.join("monitor.json"), &monitor)?;
        if let Some(h) = &run.halt {
            return Err(halt_error(h));
        }
        line.push_str(&format!(", monitor margin {:.6e}, {violations} violations", monitor.outcome.margin));
    }
    line.push_str(&format!(" -> {}", a.out.display()));
    Ok(line)
}

#[derive(Serialize)]
struct ScanBlock {
    half_length_x: f64,
    nx: usize,
    ny: usize,
    points: Vec<ScanPoint>,
}

#[derive(Serialize)]
struct LambdaScan<'a> {
    command: &'static str,
    params: &'a GnVerifyArgs,
    c_kr: f64,
    c_kt: f64,
    suite_max_ratio: f64,
    suite_worst_trial: usize,
    flat: ScanBlock,
    concentration: ScanBlock,
}

pub(super) fn gn_verify(a: &GnVerifyArgs) -> Result<String, CliError> {
    let c_kt = a.c_kt.unwrap_or_else(functionals::default_cylinder_constant);
    let gs = solve_ground_state(a.k, a.gs_points)?;
    let c_kr = gs.sharp_constant;
    let suite = functionals::verify_sgn_suite(a.k, c_kr, c_kt, a.trials, a.seed, &SuiteGrid::default())?;
    write_atomic(&a.out.join("sgn_suite.csv"), suite.to_csv().as_bytes())?;

    let (fl, fnx, fny) = FLAT_GRID;
    let flat_grid = Grid::cylinder(fl, fnx, fny)?;
    let flat = functionals::flat_scan(a.k, c_kr, &a.flat_lambdas, &flat_grid);
    let (cl, cnx, cny) = CONCENTRATION_GRID;
    let conc_grid = Grid::cylinder(cl, cnx, cny)?;
    let conc = functionals::concentration_scan(a.k, &gs.radial_profile(), &a.concentration_lambdas, &conc_grid);

    let scan = LambdaScan {
        command: "gn-verify",
        params: a,
        c_kr,
        c_kt,
        suite_max_ratio: suite.max_ratio,
        suite_worst_trial: suite.worst_trial,
        flat: ScanBlock {
            half_length_x: fl,
            nx: fnx,
            ny: fny,
            points: flat,
        },
        concentration: ScanBlock {
            half_length_x: cl,
            nx: cnx,
            ny: cny,
            points: conc,
        },
    };
    write_json(&a.out.join(LAMBDA_SCAN_FILE), &scan)?;
    Ok(format!(
        "gn-verify: k = {}, {} trials, max ratio {:.6} -> {}",
        a.k,
        a.trials,
        suite.max_ratio,
        a.out.display()
    ))
}

pub(super) fn probe_strichartz(a: &ProbeArgs) -> Result<String, CliError> {
    let report = analysis::strichartz_ratio_scan(a.seed, &a.scales, a.trials, Exponents { s: a.s, b: a.b })?;
    write_json(&a.out.join(PROBE_FILE), &report)?;
    Ok(format!(
        "probe-strichartz: s = {}, b = {}, slope {:.4} -> {}",
        a.s,
        a.b,
        report.slope,
        a.out.display()
    ))
}

#[derive(Serialize)]
struct SolitonSummary<'a> {
    command: &'static str,
    params: &'a SolitonArgs,
    residual: f64,
    peak: f64,
    final_time: f64,
    mass_drift_rel: Option<f64>,
    shape_error: Option<f64>,
    halt: Option<Halt>,
}

pub(super) fn soliton_test(a: &SolitonArgs) -> Result<String, CliError> {
    let grid = Grid::cylinder(a.lx, a.nx, a.ny)?;
    let q = analysis::line_soliton(a.c, a.k, &grid)?;
    let residual = analysis::line_soliton_residual(&q, a.c, a.k);
    let mut summary = SolitonSummary {
        command: "soliton-test",
        params: a,
        residual,
        peak: analysis::line_soliton_value(a.c, a.k, 0.0),
        final_time: 0.0,
        mass_drift_rel: None,
        shape_error: None,
        halt: None,
    };
    if a.t_end > 0.0 {
        let cfg = SimConfig {
            k: a.k,
            dt: a.dt,
            t_end: a.t_end,
            half_length_x: a.lx,
            nx: a.nx,
            ny: a.ny,
            sign: Sign::Focusing,
            snapshot_stride: usize::MAX,
            diagnostics_stride: ((a.t_end / a.dt / 100.0).round() as usize).max(1),
            c_kt: 0.0,
            snapshot_dir: None,
        };
        let run = dynamics::evolve(&q, &cfg)?;
        dynamics::write_diagnostics_csv(&a.out.join(DIAGNOSTICS_FILE), &run.diagnostics)?;
        summary.final_time = run.final_time;
        summary.mass_drift_rel = Some(max_relative_drift(&run.diagnostics, |r| r.mass));
        summary.shape_error = Some(soliton_shape_error(&run.final_state, a.c, a.k, run.final_time));
        summary.halt = run.halt;
    }
    write_json(&a.out.join("soliton.json"), &summary)?;
    if let Some(h) = &summary.halt {
        return Err(halt_error(h));
    }
    Ok(format!(
        "soliton-test: residual {:.3e}, shape error {} -> {}",
        residual,
        summary.shape_error.map_or("n/a".to_string(), |e| format!("{e:.3e}")),
        a.out.display()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drift_is_relative_to_first_row() {
        let row = |t: f64, mass: f64| DiagnosticsRow {
            t,
            mass,
            energy: 1.0,
            grad_norm_sq: 0.0,
            linf: 0.0,
            x_t: 0.0,
        };
        let rows = [row(0.0, 2.0), row(1.0, 2.5), row(2.0, 1.0)];
        assert_eq!(max_relative_drift(&rows, |r| r.mass), 0.5);
        assert_eq!(max_relative_drift(&rows, |r| r.energy), 0.0);
        assert_eq!(max_relative_drift(&[], |r| r.mass), 0.0);
    }

    #[test]
    fn exact_soliton_has_no_shape_error() {
        let g = Grid::cylinder(20.0, 256, 4).unwrap();
        let q = Field::from_fn(&g, |x, _| analysis::line_soliton_value(1.0, 2, x - 0.7));
        assert!(soliton_shape_error(&q, 1.0, 2, 0.7) < 1e-7);
        assert!(soliton_shape_error(&q, 1.0, 2, 0.0) > 1e-2);
        assert_eq!(transverse_variation(&q), 0.0);
    }
}
