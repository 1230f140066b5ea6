//! Projective heights, Plücker heights of subspaces, orthogonal complements
//! and the minor matrix relating two bases.

mod gamma;
mod projective;
mod subspace;

pub use gamma::{gamma_matrix, gamma_minors};
pub use projective::{height_projective, hprime, hprime_scalar, mahler_height, HeightVariant, ProjectivePoint};
pub use subspace::{
    combinations, hermitian_pairing, log_binomial, orthogonal_complement, pluecker, subspace_height, SubspaceSpec,
};
