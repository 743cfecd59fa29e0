use thiserror::Error;

/// Domain errors raised by lattice operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("basis columns are linearly dependent (|det| = {det:e})")]
    SingularBasis { det: f64 },
    #[error("unsupported dimension {0}; only 2 and 3 are supported")]
    UnsupportedDimension(usize),
    #[error("invalid cell parameters: {0}")]
    InvalidCellParameters(String),
    #[error("basis reduction did not converge within {steps} steps")]
    ReductionNonConvergence { steps: usize },
    #[error("Voronoi cell is degenerate: only {vertices} distinct vertices found")]
    DegenerateCell { vertices: usize },
    #[error("cell is not a primitive cell of the lattice: {0}")]
    NotAPrimitiveCell(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
