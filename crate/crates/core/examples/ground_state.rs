//! Computes the planar ground state `Q_k` and prints its JSON report.
//!
//! ```text
//! cargo run --release --example ground_state -- 2 512
//! ```

use gzk::groundstate::{petviashvili_solve, SolveOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(2, |a| a.parse().expect("k"));
    let points: usize = args.next().map_or(512, |a| a.parse().expect("points"));
    let opts = SolveOptions {
        points,
        ..SolveOptions::default()
    };
    let start = std::time::Instant::now();
    let gs = petviashvili_solve(k, &opts).expect("Petviashvili iteration");
    let (grad_defect, potential_defect) = gs.pohozaev_defects();
    println!("{}", serde_json::to_string_pretty(&gs.report()).expect("report"));
    println!("gradient identity defect  {grad_defect:.3e}");
    println!("potential identity defect {potential_defect:.3e}");
    println!("radial asymmetry          {:.3e}", gs.max_asymmetry());
    println!("elapsed                   {:.2?}", start.elapsed());
}
