use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("lattices live in different ambient dimensions ({left} vs {right})")]
    AmbientDimension { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("points are not full-dimensional in Z^{dim}")]
    Degenerate { dim: usize },
    #[error("automatic convex hull supports dimension <= 3, got {dim}; supply half-spaces")]
    UnsupportedDimension { dim: usize },
    #[error("inconsistent V/H representation: {0}")]
    Inconsistent(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid wall: {0}")]
    InvalidWall(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("lattice point {0:?} lies in neither piece")]
    PointOutsidePieces(Vec<String>),
    #[error("lift was built on a different point order")]
    OrderMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("ring has no eta variable")]
    NoEta,
    #[error("exponent {0} does not fit a monomial exponent")]
    ExponentOverflow(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Lifting(#[from] LiftingError),
    #[error("subdivision is not semi-stable: {0}")]
    NotSemistable(String),
    #[error("point order: {0}")]
    PointOrder(String),
}
