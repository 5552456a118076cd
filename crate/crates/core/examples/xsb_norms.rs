//! Space-time fields, Littlewood–Paley and modulation projectors, and the
//! discrete `X^{s,b}` norm of a free wave versus a modulated one.
//!
//! ```text
//! cargo run --release --example xsb_norms
//! ```

use gzk::analysis::{project_modulation, project_spatial, spacetime_lebesgue_norm, xsb_norm, SpaceTimeField};
use gzk::spectral::{self, Grid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let grid = Grid::cylinder(8.0, 64, 16).expect("grid");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let phi = spectral::band_limited_random(&grid, 12, 3, &mut rng);
    let free = SpaceTimeField::from_free_wave(&phi, 128).expect("free wave");
    println!("sigma_max = {:.2}", free.max_modulation());
    println!("free wave: L2 {:.6}, L4 {:.6}", free.l2_norm(), spacetime_lebesgue_norm(&free, 4.0));
    for (s, b) in [(0.0, 0.0), (1.0 / 6.0, 0.375), (1.0, 0.5)] {
        println!("  X^({s:.3},{b:.3}) = {:.6}", xsb_norm(&free, s, b));
    }
    println!("  modulation mass below |sigma| = 5: {:.6}", free.modulation_mass_fraction(5.0));

    for n in [1u64, 2, 4, 8] {
        let part = project_spatial(&free, n).expect("shell");
        println!("  P_{n:<2} share of L2^2: {:.6}", (part.l2_norm() / free.l2_norm()).powi(2));
    }
    for l in [1u64, 2, 4] {
        let part = project_modulation(&free, l).expect("shell");
        println!("  Q_{l} share of L2^2: {:.6}", (part.l2_norm() / free.l2_norm()).powi(2));
    }

    let slices: Vec<_> = (0..128)
        .map(|n| {
            let t = free.time(n);
            free.slice(n).scaled(1.0 + 0.5 * (6.0 * t).cos())
        })
        .collect();
    let modulated = SpaceTimeField::from_slices(&slices).expect("slices");
    println!(
        "modulated wave: X^(0,1/2) {:.6} vs free {:.6}",
        xsb_norm(&modulated, 0.0, 0.5),
        xsb_norm(&free, 0.0, 0.5)
    );
}
