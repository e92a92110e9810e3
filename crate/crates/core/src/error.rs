use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation {0} is not irreducible")]
    NotIrreducible(String),
    #[error("point {0} outside the domain [0, {1})")]
    OutOfDomain(f64, f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid lengths: {0}")]
    InvalidLengths(String),
    #[error("suspension invalid: {0}")]
    SuspensionInvalid(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(f64),
    #[error("degenerate transversal: {0}")]
    DegenerateTransversal(String),
    #[error("length collapse at index {0}")]
    LengthCollapse(usize),
    #[error("singularities collide along the deformation: {0}")]
    CollisionObstruction(String),
    #[error("direction is not in the null space of the form")]
    NotInNullSpace,
    #[error("parameter must be positive, got {0}")]
    NonpositiveParameter(f64),
    #[error("pair is not positive: {0}")]
    NotPositivePair(String),
}

impl Error {
    /// Stable machine-readable code, distinct per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::OutOfDomain(..) => "OutOfDomain",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidLengths(_) => "InvalidLengths",
            Error::SuspensionInvalid(_) => "SuspensionInvalid",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::DegenerateTransversal(_) => "DegenerateTransversal",
            Error::LengthCollapse(_) => "LengthCollapse",
            Error::CollisionObstruction(_) => "CollisionObstruction",
            Error::NotInNullSpace => "NotInNullSpace",
            Error::NonpositiveParameter(_) => "NonpositiveParameter",
            Error::NotPositivePair(_) => "NotPositivePair",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
