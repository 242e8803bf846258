use thiserror::Error;

/// Errors reported by the exact-arithmetic and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix {which} is not an involution")]
    NotInvolution { which: &'static str },

    #[error("matrix is not a reversing symmetry of the given map")]
    NotReversing,

    #[error("involution is trivial (plus or minus identity), outside the classified range")]
    DegenerateInvolution,

    #[error("involution pair is not transversal")]
    NotTransversal,

    #[error("unsupported dimension {dim}: {context}")]
    UnsupportedDimension { dim: usize, context: &'static str },

    #[error("fixed subspaces do not have codimension 1, outside the classified range")]
    UnsupportedCodimension,

    #[error("index out of range: {context}")]
    IndexOutOfRange { context: &'static str },

    #[error("trace invariant out of range: {context}")]
    TraceOutOfRange { context: &'static str },

    #[error("no accumulation of fixed lines in this case: {context}")]
    NoAccumulation { context: &'static str },

    #[error("probe point lies on the fixed line of {labels}")]
    ProbeOnFixedLine { labels: String },

    #[error("conjugacy witness search failed: {context}")]
    WitnessSearchFailed { context: &'static str },

    #[error("discriminant {0} is not admissible (must be square-free and not a perfect square)")]
    InvalidDiscriminant(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
