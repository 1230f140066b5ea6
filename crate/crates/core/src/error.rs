use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("minimal polynomial must be monic with nonzero degree")]
    NotMonic,
    #[error("number fields of degree {0} are not supported (maximum 6)")]
    DegreeTooLarge(usize),
    #[error("polynomial is reducible over Q; factor found: {factor}")]
    Reducible { factor: String },
    #[error("integral basis matrix is singular")]
    SingularIntegralBasis,
    #[error("integral basis does not span a ring: {0}")]
    IntegralBasisNotRing(String),
    #[error("invalid conjugation automorphism: {0}")]
    InvalidConjugation(String),
    #[error("field is not stable under complex conjugation: supply the conjugation automorphism (image of the generator)")]
    NotConjugationStable,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields")]
    MixedFields,
    #[error("insufficient precision ({bits} bits): {what}; increase the precision")]
    Precision { bits: u32, what: String },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("the zero ideal has no norm")]
    ZeroIdeal,
    #[error("rank deficiency: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("characteristic polynomial does not split over the field; unsplit factor {factor}")]
    NotSplit { factor: String },
    #[error("eigenvalue hint rejected: {0}")]
    HintRejected(String),
    #[error("matrix is singular")]
    Singular,
    #[error("element is not in the Lie algebra of the group: {0}")]
    NotInLieAlgebra(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
