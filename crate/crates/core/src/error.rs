use alloc::string::String;

use crate::intlinalg::Subgroup;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Some nonzero subgroup is collapsed to zero by every map, so a single
    /// tile of bounded footprint can contain unboundedly many points.
    #[error("primal LP is infeasible: a rank {} subgroup is mapped to zero by every map (unbounded data reuse)", .witness.rank())]
    InfeasiblePrimal { witness: Subgroup },

    #[error("dual vector is not feasible: C_{map} = {value} > 1")]
    InfeasibleDual { map: usize, value: String },

    #[error("dual support does not match the flag")]
    SupportMismatch,

    #[error("tile elements are linearly dependent")]
    DependentElements,

    #[error("invalid tile spec: {0}")]
    InvalidTileSpec(String),

    #[error("map {0} does not have rank one")]
    NotRankOne(usize),

    #[error("map {0} does not have rank d-1")]
    NotRankDMinusOne(usize),

    #[error("kernels of the maps intersect nontrivially (unbounded data reuse)")]
    KernelsIntersect,

    #[error("{maps} rank-one maps cannot cut Z^{dim} down to zero")]
    FewerMapsThanDim { maps: usize, dim: usize },

    #[error("enumeration needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("exponent fit needs at least 3 samples, got {0}")]
    TooFewSamples(usize),

    #[error("memory split is undefined for an all-zero exponent vector")]
    ZeroSplit,

    #[error("coordinate does not fit in 64 bits")]
    Overflow,
}
