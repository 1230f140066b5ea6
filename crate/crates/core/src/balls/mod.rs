//! Certified real intervals, complex balls and ball matrices.

mod complex;
mod distance;
mod matrix;
mod real;
mod verify;

pub use complex::ComplexBall;
pub use distance::{distance_by_projection, distance_to_subspace, hyperplane_distance};
pub use matrix::{matrix_exp_numeric, BallMatrix};
pub use real::RealEnclosure;
pub use verify::{verify_instance, verify_many, VerifyJob, VerifyReport, VerifyStatus, MAX_PRECISION};
