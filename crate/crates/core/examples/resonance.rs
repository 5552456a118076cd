//! The resonance function and its second derivatives along a fixed output
//! frequency.
//!
//! ```text
//! cargo run --release --example resonance
//! ```

use gzk::analysis;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-100.0..100.0));
        let (diff, scale) = analysis::resonance_by_difference(v[0], v[1], v[2], v[3]);
        worst = worst.max((analysis::resonance(v[0], v[1], v[2], v[3]) - diff).abs() / scale.max(1.0));
    }
    println!("closed form vs symbol difference: {worst:.2e}");
    for (xi, q, xi1, q1) in [(1.0, 0.0, 0.3, 0.2), (2.0, 5.0, -1.5, 7.0), (-3.0, 1.0, 4.0, -2.0)] {
        let fd = analysis::second_derivatives_check(xi, q, xi1, q1);
        let exact = analysis::second_derivatives_closed_form(xi);
        println!("xi = {xi:>4}: finite differences {fd:?}, closed form {exact:?}");
    }
}
