use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{simplex_solve, DualVector, LpOutcome, Sense};
use crate::constraints::ConstraintSet;
use crate::intlinalg::{image_rank, Subgroup};
use crate::{Error, HblProblem, Rational, Result};

/// `rank(H)` and `rank(phi_i(H))` for every subgroup of a constraint set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub ranks: Vec<usize>,
    /// `images[k][i] = rank(phi_i(E_k))`
    pub images: Vec<Vec<usize>>,
}

pub fn rank_table(p: &HblProblem, e: &ConstraintSet) -> RankTable {
    let ranks = e.subgroups.iter().map(Subgroup::rank).collect();
    let images = e
        .subgroups
        .iter()
        .map(|h| p.maps().iter().map(|phi| image_rank(phi, h)).collect())
        .collect();
    RankTable { ranks, images }
}

impl RankTable {
    /// First subgroup sent to zero by every map, if any.
    fn collapsed(&self) -> Option<usize> {
        (0..self.ranks.len()).find(|&k| self.ranks[k] > 0 && self.images[k].iter().all(|&r| r == 0))
    }

    fn primal_rows(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let a = self
            .images
            .iter()
            .map(|row| row.iter().map(|&r| int(r)).collect())
            .collect();
        let b = self.ranks.iter().map(|&r| int(r)).collect();
        (a, b)
    }
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimalStatus {
    Optimal,
    /// `witness` is a nonzero subgroup that every map sends to zero.
    Infeasible {
        witness: Subgroup,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalSolution {
    /// One exponent per map; empty when infeasible.
    pub s: Vec<Rational>,
    /// `s_HBL = 1ᵀs`
    pub objective: Rational,
    pub status: PrimalStatus,
}

impl PrimalSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == PrimalStatus::Optimal
    }
}

/// `min 1ᵀs` subject to `sum_i s_i rank(phi_i(H)) >= rank(H)` for each `H` in `e`.
pub fn solve_primal(p: &HblProblem, e: &ConstraintSet) -> PrimalSolution {
    let table = rank_table(p, e);
    if let Some(k) = table.collapsed() {
        return PrimalSolution {
            s: Vec::new(),
            objective: Rational::zero(),
            status: PrimalStatus::Infeasible {
                witness: e.subgroups[k].clone(),
            },
        };
    }
    let (a, b) = table.primal_rows();
    let c = vec![Rational::one(); p.num_maps()];
    match simplex_solve(&c, &a, &b, Sense::Min) {
        LpOutcome::Optimal { x, objective } => PrimalSolution {
            s: x,
            objective,
            status: PrimalStatus::Optimal,
        },
        // every row has a positive coefficient once no subgroup collapses, and c >= 0
        other => unreachable!("primal LP cannot be {other:?} without a collapsed subgroup"),
    }
}

/// `max yᵀrank(E)` subject to `yᵀrank(phi_i(E)) <= 1`, solved as its own LP.
///
/// Among optimal vectors, the one returned maximizes the total weight on
/// rank-`d` subgroups, then on rank `d-1`, and so on down to rank 1.
pub fn solve_dual(p: &HblProblem, e: &ConstraintSet) -> Result<DualVector> {
    let table = rank_table(p, e);
    if let Some(k) = table.collapsed() {
        return Err(Error::InfeasiblePrimal {
            witness: e.subgroups[k].clone(),
        });
    }
    let n = p.num_maps();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| table.images.iter().map(|row| int(row[i])).collect())
        .collect();
    let mut b = vec![Rational::one(); n];
    let value: Vec<Rational> = table.ranks.iter().map(|&r| int(r)).collect();
    let mut x = max_or_unreachable(&value, &a, &b);

    // pin the optimum, then raise the weight per rank from the top down
    let best: Rational = value.iter().zip(&x).map(|(c, v)| c * v).sum();
    a.push(value.iter().map(|c| -c).collect());
    b.push(-best);
    for r in (1..=p.dim()).rev() {
        let class: Vec<Rational> = table
            .ranks
            .iter()
            .map(|&k| {
                if k == r {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        if class.iter().all(Zero::is_zero) {
            continue;
        }
        x = max_or_unreachable(&class, &a, &b);
        let reached: Rational = class.iter().zip(&x).map(|(c, v)| c * v).sum();
        a.push(class.iter().map(|c| -c).collect());
        b.push(-reached);
    }
    Ok(DualVector::from_entries(
        e.subgroups
            .iter()
            .cloned()
            .zip(x)
            .filter(|(_, v)| !v.is_zero()),
    ))
}

fn max_or_unreachable(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Vec<Rational> {
    match simplex_solve(c, a, b, Sense::Max) {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Unbounded | LpOutcome::Infeasible => {
            unreachable!("the previous optimum stays feasible and boundedness follows from primal feasibility")
        }
    }
}

/// Optimal memory split `c_i = s_i / 1ᵀs`.
pub fn optimal_split(s: &[Rational]) -> Result<Vec<Rational>> {
    if s.iter().any(Signed::is_negative) {
        return Err(Error::InvalidProblem(
            "exponents must be nonnegative".into(),
        ));
    }
    let total: Rational = s.iter().sum();
    if total.is_zero() {
        return Err(Error::ZeroSplit);
    }
    Ok(s.iter().map(|x| x / &total).collect())
}
