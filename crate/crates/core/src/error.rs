use crate::exactmath::LatticeVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the inequality system defines an unbounded region")]
    Unbounded,
    #[error("the inequality system is infeasible")]
    Infeasible,
    #[error("vertex {0} is not a lattice point")]
    NonLatticeVertex(String),
    #[error("polytope is not a simplex ({vertices} vertices, dimension {dim})")]
    NotSimplex { vertices: usize, dim: usize },
    #[error("point {0} is not in the interior of the cone")]
    NotInterior(LatticeVector),
    #[error("point {0} is not in the linear span of the cone")]
    NotInSpan(LatticeVector),
    #[error("point {0} is already a vertex of the triangulation")]
    AlreadyVertex(LatticeVector),
    #[error("point {0} lies outside the triangulated region")]
    OutsideRegion(LatticeVector),
    #[error("polytope has no interior lattice point")]
    NoInteriorPoint,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
