//! Propagates the line soliton `Q_c(x - ct)` and a transversely perturbed
//! copy, reporting the shape error and the transverse variation.
//!
//! ```text
//! cargo run --release --example line_soliton -- 1 1.0 0.05
//! ```

use gzk::analysis;
use gzk::dynamics::{self, initial, SimConfig};
use gzk::spectral::{self, Field};

fn transverse_variation(u: &Field) -> f64 {
    let g = u.grid();
    let v = u.values();
    (0..g.nx())
        .map(|i| {
            let row = (0..g.ny()).map(|j| v[g.index(i, j)]);
            let (lo, hi) = row.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
            hi - lo
        })
        .fold(0.0, f64::max)
}

fn main() {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(1, |a| a.parse().expect("k"));
    let c: f64 = args.next().map_or(1.0, |a| a.parse().expect("c"));
    let eps: f64 = args.next().map_or(0.05, |a| a.parse().expect("eps"));
    let cfg = SimConfig {
        k,
        nx: 512,
        ny: 16,
        ..SimConfig::default()
    };
    let grid = cfg.grid().expect("grid");
    let q = analysis::line_soliton(c, k, &grid).expect("soliton fits in the box");
    println!("profile residual        {:.3e}", analysis::line_soliton_residual(&q, c, k));

    let run = dynamics::evolve(&q, &cfg).expect("evolution");
    let l = grid.half_length_x();
    let t = run.final_time;
    let exact = Field::from_fn(&grid, |x, _| analysis::line_soliton_value(c, k, (x - c * t + l).rem_euclid(2.0 * l) - l));
    let err = spectral::lebesgue_norm(&run.final_state.add_scaled(&exact, -1.0).expect("grid"), 2.0)
        / spectral::lebesgue_norm(&exact, 2.0);
    println!("shape error at t={t}     {err:.3e}");
    println!("transverse variation    {:.3e}", transverse_variation(&run.final_state));

    let p = initial::perturbed_line_soliton(&grid, c, k, eps).expect("perturbed soliton");
    let run = dynamics::evolve(&p, &cfg).expect("evolution");
    println!(
        "perturbed: variation {:.4e} -> {:.4e}",
        transverse_variation(&p),
        transverse_variation(&run.final_state)
    );
}
