use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic must be 0 or a prime, got {0}")]
    NotPrime(String),
    #[error("cannot read coefficient {0:?}")]
    BadCoefficient(String),
    #[error("coefficient {0} has a denominator divisible by the characteristic")]
    NotInField(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: vertex {label:?} declared twice")]
    DuplicateVertex { line: usize, label: String },
    #[error("line {line}: edge label {label:?} used twice")]
    DuplicateEdge { line: usize, label: String },
    #[error("line {line}: edge references undeclared vertex {label:?}")]
    UndeclaredVertex { line: usize, label: String },
    #[error("graph has no vertices")]
    NoVertices,
    #[error("structured graph: {0}")]
    Structured(String),
    #[error("family {family}: {message}")]
    FamilyParameter { family: String, message: String },
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("graph would have more than {limit} edges")]
    TooManyEdges { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("matrix size must be at least 1, got {0}")]
    MatrixSize(u64),
    #[error("closed form needs n >= 2 and d >= 1, got n = {n}, d = {d}")]
    ClosedFormRange { n: u64, d: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohnError {
    #[error("coefficient does not belong to the algebra's field")]
    FieldMismatch,
    #[error("edges {0} and {1} do not compose into a path")]
    NotAPath(String, String),
    #[error("vertex {0} is a sink; the generator needs a regular vertex")]
    SinkVertex(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
