use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// The variants fall into three families that front ends map to distinct exit
/// codes: malformed input ([`Error::Parse`]), violated domain preconditions
/// (most variants), and internal assertion failures ([`Error::Internal`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("quadratic form is degenerate (zero determinant)")]
    Degenerate,

    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("expected a nonzero value: {0}")]
    Zero(String),

    #[error("cannot decide squarefree part of {value}: cofactor {cofactor} has no prime factor below the trial-division bound {bound}")]
    FactorizationBound {
        value: String,
        cofactor: String,
        bound: u64,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("clifford oracle bound exceeded: n = {n} > {bound}")]
    OracleBound { n: usize, bound: usize },

    #[error("hodge type is malformed: {0}")]
    InvalidHodgeType(String),

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("cocharacter is not dominant: simple root {index} pairs to {value}")]
    NotDominant { index: usize, value: String },

    #[error("adjoint pairing outside {{0, 1}}: root {root} pairs to {value}")]
    NotMinuscule { root: String, value: String },

    #[error("expected exactly one special vertex, found {0}")]
    SpecialVertexCount(usize),

    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    #[error("isogeny matrix is singular")]
    Singular,

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
