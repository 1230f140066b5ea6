//! Explicit constants and the assembled lower bounds for `log d(u, W)`.

mod bound;
mod constants;
pub mod json;
mod linear_form;

pub use bound::{assemble_bound, bound, hyperplane_bound, pairing, theorem_bound, BoundMode, BoundReport, Pairing};
pub use constants::{c12, c4, c5, z_norm_term, Constant};
pub use linear_form::{linear_form_rhs, LinearFormInputs, LinearFormBound};
