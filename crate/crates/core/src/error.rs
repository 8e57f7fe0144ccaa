use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {k} out of range 1..={n}")]
    VertexOutOfRange { k: usize, n: usize },

    #[error("expected {expected} entries for a {n}x{n} matrix, got {got}")]
    DimensionMismatch { n: usize, expected: usize, got: usize },

    #[error("matrix must have at least one vertex")]
    Empty,

    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("arrows in both directions between {i} and {j} form a 2-cycle")]
    TwoCycle { i: usize, j: usize },

    #[error("negative arrow multiplicity {0}")]
    NegativeMultiplicity(BigInt),

    #[error("parameters must satisfy a <= b <= c, got ({a}, {b}, {c})")]
    Unsorted { a: BigInt, b: BigInt, c: BigInt },

    #[error("operation requires a 3-vertex matrix, got n = {0}")]
    NotThreeVertices(usize),

    #[error("quiver is not cyclic")]
    NotCyclic,

    #[error("quiver is not connected")]
    Disconnected,

    #[error("invalid arguments: {0}")]
    InvalidArgument(String),

    #[error("descent exceeded the step limit of {0}")]
    StepLimit(u64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::StepLimit(_) | Error::Internal(_))
    }
}
