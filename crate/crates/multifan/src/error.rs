use thiserror::Error;

/// Errors surfaced by the exact-arithmetic pipeline.
///
/// Every computation in this crate is exact, so an error is never a
/// numerical accident: it signals bad input (degenerate cones, points on
/// walls, non-generic sample vectors) or a broken internal invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank deficient")]
    RankDeficient,
    #[error("degenerate cone")]
    DegenerateCone,
    #[error("dangling edge {0}")]
    DanglingEdge(usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("division by zero in cyclotomic field")]
    CyclotomicDivisionByZero,
    #[error("non-generic specialization")]
    NonGenericSpecialization,
    #[error("truncation too short")]
    TruncationTooShort,
    #[error("expected rational result")]
    ExpectedRational,
    #[error("vector on a wall")]
    VectorOnWall,
    #[error("point on hyperplane")]
    PointOnHyperplane,
    #[error("non-generic vector")]
    NonGenericVector,
    #[error("non-generic E")]
    NonGenericPlane,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan not complete or internal error")]
    PoleCancellationFailure,
    #[error("xi is not T-Cartier")]
    NotTCartier,
    #[error("not a face of the fan")]
    NotAFace,
    #[error("empty face")]
    EmptyFace,
    #[error("polytope not simple")]
    NotSimple,
    #[error("not a polytope")]
    NotPolytope,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
