//! The cylinder Gagliardo–Nirenberg inequality: builds the partition of
//! unity behind the transverse constant, runs the randomized suite, and
//! shows the two scaling scans.
//!
//! ```text
//! cargo run --release --example gagliardo_nirenberg -- 2
//! ```

use gzk::functionals::{self, build_partition, PartitionProfile, SuiteGrid};
use gzk::groundstate::{petviashvili_solve, SolveOptions};
use gzk::spectral::Grid;

fn main() {
    let k: u32 = std::env::args().nth(1).map_or(2, |a| a.parse().expect("k"));
    for profile in [PartitionProfile::Mollified, PartitionProfile::CosineBump, PartitionProfile::PolynomialBump] {
        let p = build_partition(profile, 512).expect("partition");
        println!("{profile:?}: C_T = {:.3}, unity defect {:.1e}", p.c_bound, p.unity_defect());
    }
    let c_kt = functionals::default_cylinder_constant();
    let gs = petviashvili_solve(k, &SolveOptions::default()).expect("ground state");
    let c_kr = gs.sharp_constant;
    println!("C_R = {c_kr:.10}, C_T = {c_kt:.6}");

    let suite = functionals::verify_sgn_suite(k, c_kr, c_kt, 100, 1, &SuiteGrid::default()).expect("no violation");
    println!("random suite: max ratio {:.6} (trial {})", suite.max_ratio, suite.worst_trial);

    let flat = Grid::cylinder(64.0, 1024, 16).expect("grid");
    for p in functionals::flat_scan(k, c_kr, &[1.0, 0.5, 0.25, 0.125], &flat) {
        println!("flat, C_T = 0: lambda {:>6} ratio {:.4}", p.lambda, p.ratio);
    }
    let conc = Grid::cylinder(4.0, 1024, 256).expect("grid");
    for p in functionals::concentration_scan(k, &gs.radial_profile(), &[4.0, 8.0, 16.0], &conc) {
        println!("concentrated: lambda {:>4} quotient/C_R {:.8}", p.lambda, p.ratio / c_kr);
    }
}
