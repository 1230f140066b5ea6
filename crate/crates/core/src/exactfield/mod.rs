//! Exact arithmetic in number fields, integer lattices and ideal norms.

mod element;
mod field;
mod ideal;
pub mod intmat;
pub mod linalg;
mod poly;
mod roots;

pub use element::{parse_rational, FieldElement};
pub use field::{NumberField, Place, MAX_DEGREE};
pub use ideal::ideal_norm;
pub use intmat::hnf;
pub use linalg::{Mat, Scalar};
pub use poly::QPoly;
pub use roots::{isolate_roots, IsolatedRoot};
