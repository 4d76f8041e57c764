use thiserror::Error;

/// Errors raised by constructions. Failed identity checks are not errors;
/// they come back as a failing [`crate::report::Check`].
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    BadEmbedding { from: u32, to: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group {0} is not cyclic, so it has no injective character")]
    NotCyclic(String),

    #[error("character index {k} is not coprime to the group order {order}")]
    NotInjective { k: i64, order: u64 },

    #[error("subspace is not an ideal: bracket of basis {basis} with ideal vector {vector} escapes")]
    NotAnIdeal { basis: usize, vector: usize },

    #[error("subspace is not closed under the bracket (basis vectors {0} and {1})")]
    NotClosed(usize, usize),

    #[error("map {index} is not a Lie algebra automorphism")]
    NotAutomorphism { index: usize },

    #[error("group element {index} does not preserve the bilinear form")]
    FormNotPreserved { index: usize },

    #[error("group closure exceeded {bound} elements")]
    NotFinite { bound: usize },

    #[error("degree {degree} lies outside the window [-{window}, {window}]")]
    WindowExceeded { degree: i64, window: i64 },

    #[error("the Cartan elements are not simultaneously diagonalizable with eigenvalues in i*Z: {0}")]
    NotSimultaneouslyDiagonalizable(String),

    #[error("unrecognized root system, Cartan matrix {cartan_matrix:?}")]
    UnrecognizedRootSystem { cartan_matrix: Vec<Vec<i64>> },

    #[error("ad h is not semisimple with integer eigenvalues")]
    NotIntegerSemisimple,

    #[error("no grading element found: {0}")]
    NotFound(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
