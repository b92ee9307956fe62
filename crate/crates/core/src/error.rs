use thiserror::Error;

/// Errors raised by the lattice and reflection-group routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate lattice: Gram matrix has zero determinant")]
    DegenerateLattice,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("vector is not spacelike")]
    NotSpacelike,
    #[error("roots {0} and {1} form an obtuse angle")]
    NotAcuteAngled(usize, usize),
    #[error("roots {0} and {1} meet at a non-Coxeter angle")]
    NotCoxeter(usize, usize),
    #[error("vertex is degenerate: no spherical triangle with these angles")]
    DegenerateVertex,
    #[error("ill-posed angle set: {0}")]
    IllposedAngleSet(String),
    #[error("lattice is not hyperbolic (signature {0}, {1})")]
    NotHyperbolic(usize, usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
