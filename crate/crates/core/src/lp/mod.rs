//! Exact linear programming for the HBL exponent.
//!
//! [`simplex_solve`] is a dense two-phase simplex over [`Rational`](crate::Rational)
//! with Bland's rule. On top of it sit the primal (`min 1ᵀs` subject to one rank
//! constraint per subgroup), the dual (weights on subgroups), the memory split
//! and the entropy constant `gamma`.

mod dual;
mod gamma;
mod hbl;
mod simplex;

pub use dual::{eval_dual, DualVector};
pub use gamma::{
    compute_gamma, compute_gamma_with_tolerance, GammaEnclosure, DEFAULT_GAMMA_TOLERANCE,
};
pub use hbl::{
    optimal_split, rank_table, solve_dual, solve_primal, PrimalSolution, PrimalStatus, RankTable,
};
pub use simplex::{simplex_solve, LpOutcome, Sense};
