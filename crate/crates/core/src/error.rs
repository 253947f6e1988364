use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields: {left} and {right}")]
    FieldMismatch { left: String, right: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("characteristic mismatch: cannot map {from} into {to}")]
    CharacteristicMismatch { from: String, to: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,

    #[error("matrix is singular")]
    Singular,

    #[error("generator set is not closed under multiplication")]
    NotClosed,

    #[error("algebra has a non-upper-triangular basis element; triangularize it first (see `triangularize_local`)")]
    NotTriangular,

    #[error("algebra is not a unital subalgebra of the constant-diagonal upper triangular matrices")]
    NotConstantDiagonal,

    #[error("algebra does not contain the identity matrix")]
    NotUnital,

    #[error("algebra is not split local over this field: {0}")]
    NotSplitLocal(String),

    #[error("radical is only available over the rationals for this routine")]
    RequiresRational,

    #[error("brute force over {size} elements exceeds the limit of {limit}; the object is too large")]
    TooLarge { size: u128, limit: u128 },

    #[error("idempotent is not central; the algebra violates the Engel-type hypothesis, decomposition refused")]
    IdempotentNotCentral,

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {message}")]
    Document { path: String, message: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
