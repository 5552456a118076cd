//! Evolves a transverse Gaussian with ETD-RK4 and prints the drift of mass
//! and energy at every diagnostics time.
//!
//! ```text
//! cargo run --release --example gaussian_conservation -- 2 1.0
//! ```

use gzk::dynamics::{self, initial, SimConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(2, |a| a.parse().expect("k"));
    let amplitude: f64 = args.next().map_or(1.0, |a| a.parse().expect("amplitude"));
    let cfg = SimConfig {
        k,
        diagnostics_stride: 100,
        ..SimConfig::default()
    };
    let u0 = initial::gaussian(&cfg.grid().expect("grid"), amplitude, 10.0);
    let run = dynamics::evolve(&u0, &cfg).expect("evolution");
    let first = run.diagnostics[0].clone();
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "dM/M", "dH/(|H|+1)", "max|u|");
    for r in &run.diagnostics {
        println!(
            "{:>6.3} {:>12.3e} {:>12.3e} {:>12.6}",
            r.t,
            (r.mass - first.mass) / first.mass,
            (r.energy - first.energy) / (first.energy.abs() + 1.0),
            r.linf
        );
    }
    if let Some(h) = run.halt {
        println!("halted: {h:?}");
    }
}
