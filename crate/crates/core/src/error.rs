use thiserror::Error;

/// Failures of the combinatorial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty complex: no facets given")]
    EmptyComplex,
    #[error("malformed facet #{index}: {reason}")]
    MalformedFacet { index: usize, reason: String },
    #[error("dimension {requested} out of range (complex has dimension {max})")]
    DimensionOutOfRange { requested: isize, max: isize },
    #[error("simplex {0} is not in the complex")]
    MissingSimplex(String),
    #[error("join operands share vertex label {0:?}")]
    JoinCollision(String),
    #[error("vertex {0:?} is not in the complex")]
    UnknownVertex(String),
    #[error("vertex {0:?} already belongs to the vertex set")]
    RedundantVertex(String),
    #[error("not a closed pseudomanifold: {0}")]
    NotAPseudomanifold(String),
    #[error("complex is not connected")]
    Disconnected,
    #[error("complex has dimension {actual}, expected {expected}")]
    WrongDimension { expected: isize, actual: isize },
}

/// Crate-level error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid coefficient ring: {0}")]
    InvalidCoefficient(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture parameter out of range: {0}")]
    FixtureParam(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
