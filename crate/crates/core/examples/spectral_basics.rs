//! Spectral derivatives, Parseval and the dealiased power on a cylinder grid.
//!
//! ```text
//! cargo run --release --example spectral_basics
//! ```

use std::f64::consts::PI;

use gzk::spectral::{self, Field, Grid};

fn main() {
    let grid = Grid::cylinder(PI, 64, 32).expect("grid");
    let u = Field::from_fn(&grid, |x, y| (2.0 * x).sin() * (2.0 * PI * y).cos() + 0.5 * x.cos());

    let ux = spectral::derivative(&u, 1, 0);
    let exact = Field::from_fn(&grid, |x, y| 2.0 * (2.0 * x).cos() * (2.0 * PI * y).cos() - 0.5 * x.sin());
    let err = ux.add_scaled(&exact, -1.0).expect("same grid").max_abs();
    println!("d/dx error              {err:.3e}");

    let physical = spectral::inner(&u, &u);
    let modal = spectral::l2_norm_sq_spectral(&u);
    println!("||u||^2 grid / modes    {physical:.15} / {modal:.15}");

    let cube = spectral::dealiased_power(&u, 3);
    println!("int u^4 (exact rule)    {:.15}", spectral::integral_of_power(&u, 4));
    println!("int u * u^3 (dealiased) {:.15}", spectral::inner(&u, &cube));
    println!("||grad u||^2            {:.15}", spectral::grad_norm_sq(&u));
    println!("H^1 norm                {:.15}", spectral::sobolev_norm(&u, 1.0));
}
