use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Input(String),

    #[error("polynomial parse error at offset {offset}: {message}")]
    PolyParse { offset: usize, message: String },

    #[error("ring file error at line {line}, column {col}: {message}")]
    RingFile {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree {degree} exceeds the computed cutoff {cutoff}")]
    DegreeOverflow { degree: usize, cutoff: usize },

    #[error("element is not a cycle")]
    NotACycle,

    #[error("element is not a boundary")]
    NotABoundary,

    #[error("subspace is not contained in the given ambient subspace")]
    NotContained,

    #[error("Massey product undefined: {0}")]
    ProductsNotZero(String),

    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
