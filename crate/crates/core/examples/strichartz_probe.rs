//! Monte-Carlo scan of `||u||_{L^4} / ||u||_{X^{s,b}}` over dyadic shells
//! for free waves with random-phase data.
//!
//! ```text
//! cargo run --release --example strichartz_probe -- 0.1666666 0.375 20
//! ```

use gzk::analysis::{strichartz_ratio_scan, Exponents};

fn main() {
    let mut args = std::env::args().skip(1);
    let s: f64 = args.next().map_or(1.0 / 6.0, |a| a.parse().expect("s"));
    let b: f64 = args.next().map_or(0.375, |a| a.parse().expect("b"));
    let trials: usize = args.next().map_or(20, |a| a.parse().expect("trials"));
    let report = strichartz_ratio_scan(1, &[1, 2, 4, 8, 16, 32, 64], trials, Exponents { s, b }).expect("scan");
    println!("{:>4} {:>10} {:>10}", "N", "max", "mean");
    for p in &report.per_scale {
        println!("{:>4} {:>10.6} {:>10.6}", p.n, p.max_ratio, p.mean_ratio);
    }
    println!("slope of log max ratio vs log N: {:.4}", report.slope);
}
