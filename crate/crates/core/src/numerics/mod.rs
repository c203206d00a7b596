//! Deterministic dense-matrix kernels, seeded random streams, and the
//! finite-difference gradient oracle used by every other module.

pub mod eigen;
pub mod fd;
pub mod matrix;
pub mod rng;
pub mod solve;

pub use eigen::{max_eigenvalue, min_eigenvalue_spd};
pub use fd::{finite_diff_gradient, DEFAULT_STEP};
pub use matrix::{vec_dot, vec_norm, Matrix};
pub use rng::{gaussian_sample, RngStream};
pub use solve::{cholesky, solve_spd, solve_spd_vec};
