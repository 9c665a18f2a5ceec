//! Parallelepiped tiles and the translations that tile `Z^d` with them.
//!
//! A [`TileSpec`] lists independent integer elements grouped by a scaling
//! exponent `k`; the tile is every combination `sum a_j e_j` with
//! `0 <= a_j < floor(M^k)`. [`build_tiling`] adds the translation sets from a
//! Smith normal form of the element matrix. [`plan_tiling`] runs the whole
//! pipeline from an [`HblProblem`](crate::HblProblem).

mod build;
mod exact;
mod flag;
mod plan;
mod spec;

pub use build::{build_tiling, build_tiling_with_budget, LatticeStep, TilingResult};
pub use exact::{
    exact_construction, kernel_generator, rank_d_minus_one_tiling, rank_one_elements,
    rank_one_tiling, ConstructedTiling, Construction,
};
pub use flag::{flag_decompose, FlagDecomposition};
pub use plan::{analyze, plan, plan_tiling, tiling_for, Analysis, AnalysisReport, PlanOptions};
pub use spec::{enumerate_tile, floor_power, TileGroup, TilePoints, TileSpec};
