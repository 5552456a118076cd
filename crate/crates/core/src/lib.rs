//! Pseudospectral simulation and variational analysis of the generalized
//! Zakharov–Kuznetsov equation
//!
//! ```text
//! u_t + d_x(u^{k+1}) + u_xxx + u_xyy = 0,   (x, y) in R x T,
//! ```
//!
//! on the cylinder with a unit-period transverse direction.
//!
//! * [`spectral`]: grids, fields, spectral derivatives, norms, dealiased powers
//!   and the GZKF snapshot format.
//! * [`dynamics`]: exponential time differencing (ETD-RK4) evolution with
//!   mass/energy diagnostics.
//! * [`groundstate`]: Petviashvili computation of the planar ground state
//!   `Q_k` and the sharp Gagliardo–Nirenberg constant.
//! * [`functionals`]: conserved functionals, the cylinder Gagliardo–Nirenberg
//!   inequality with an explicit transverse constant, and global-existence
//!   threshold reports.
//! * [`analysis`]: resonance function, line solitons, Littlewood–Paley and
//!   modulation projectors, discrete `X^{s,b}` norms and the `L^4`
//!   Strichartz probe.
//! * [`cli`]: the `gzk` command-line front end.

pub mod analysis;
pub mod cli;
pub mod cutoff;
pub mod dynamics;
pub mod functionals;
pub mod groundstate;
pub mod spectral;

pub use spectral::{Field, Grid};
