//! Matrices over a number field, Lie algebra bases, Jordan factorizations
//! of K-points and conjugator bounds.

mod eigen;
mod group;
mod jordan;
mod matrix;
mod witness;

pub use eigen::eigenvalues;
pub use group::{coords_in_basis, GroupData};
pub use jordan::{exp_exact, jordan_basis, kpoint_from_matrix, JordanBlock, JordanData, KPoint, LogEigenvalue};
pub use matrix::{conjugate, conjugate_ball, mat_height, mat_norm, MatrixK, Side};
pub use witness::{b2_witness, conjugator_quality};
