use thiserror::Error;

/// Errors raised by the library.
///
/// The variants split into two families: malformed input (parse errors,
/// mismatched dimensions, empty sets) and violated mathematical
/// preconditions (degenerate systems, non-exhaustive weights). The CLI maps
/// the second family to a distinct exit code, see [`Error::is_precondition`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("negative exponent at byte {pos} outside Laurent mode")]
    NegativeExponent { pos: usize },

    #[error("variable z{index} at byte {pos} exceeds the number of variables ({n_vars})")]
    VariableOutOfRange { index: usize, n_vars: usize, pos: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyInput,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("Laurent polynomials are not accepted here")]
    LaurentNotSupported,

    #[error("scale factor must be nonnegative")]
    NegativeScale,

    #[error("polytope is not full-dimensional (affine dimension {dim} in {ambient}-space)")]
    LowerDimensional { dim: usize, ambient: usize },

    #[error("expected {expected} polytopes, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{found} indicators exceed the ambient dimension {n}")]
    TooManyIndicators { found: usize, n: usize },

    #[error("direction must be strictly positive in every coordinate")]
    NonPositiveDirection,

    #[error("indicator violates its invariants: {0}")]
    InvalidIndicator(String),

    #[error("weight is not exhaustive: {0}")]
    NonExhaustive(String),

    #[error("degenerate system: {0}")]
    Degenerate(String),

    #[error("resultant degree bound {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for violated mathematical preconditions, as opposed to malformed
    /// input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::ZeroPolynomial
                | Error::LowerDimensional { .. }
                | Error::NonExhaustive(_)
                | Error::Degenerate(_)
                | Error::DegreeOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
