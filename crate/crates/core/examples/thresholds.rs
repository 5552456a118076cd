//! Global-existence thresholds for a Gaussian datum, followed by a run that
//! monitors the relevant bound at every diagnostics time.
//!
//! ```text
//! cargo run --release --example thresholds -- 3 0.3
//! cargo run --release --example thresholds -- 2 0.9
//! ```
//!
//! For `k = 2` the second argument is the mass fraction `||u0|| / ||Q_2||`;
//! otherwise it is the Gaussian amplitude.

use gzk::dynamics::{self, initial, SimConfig};
use gzk::functionals::{self, threshold_report};
use gzk::groundstate::{petviashvili_solve, SolveOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(3, |a| a.parse().expect("k"));
    let level: f64 = args.next().map_or(0.3, |a| a.parse().expect("level"));
    let c_kt = functionals::default_cylinder_constant();
    let gs = petviashvili_solve(k, &SolveOptions::default()).expect("ground state");
    let cfg = SimConfig {
        k,
        c_kt,
        ..SimConfig::default()
    };
    let grid = cfg.grid().expect("grid");
    let mut u0 = initial::gaussian(&grid, if k == 2 { 1.0 } else { level }, 10.0);
    if k == 2 {
        u0 = u0.scaled(level * gs.mass_norm() / functionals::mass(&u0).sqrt());
    }
    let report = threshold_report(&u0, k, &gs, c_kt).expect("report");
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));

    let run = dynamics::evolve(&u0, &cfg).expect("evolution");
    let outcome = functionals::monitor_run(&report, &run.diagnostics);
    println!(
        "bound {:?}, smallest margin {:.6e}, violations {}",
        outcome.bound,
        outcome.margin,
        outcome.violations.len()
    );
}
