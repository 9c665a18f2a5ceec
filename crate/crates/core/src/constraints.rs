//! Finite subgroup lists for the primal LP.
//!
//! The constraint `sum_i s_i rank(phi_i(H)) >= rank(H)` only needs to be
//! imposed for the subgroups in the lattice generated by the kernels under sums
//! and intersections. That lattice can be infinite, so generation is capped and
//! the result labelled [`Completeness::Partial`] when the cap is hit. A partial
//! list still yields a sound (possibly smaller) exponent and a valid tiling.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::intlinalg::{kernel_basis, IntMatrix, Subgroup};
use crate::HblProblem;

pub const DEFAULT_MAX_CLOSURE: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CoordinateProjections,
    FewMaps,
    KernelClosure,
    FullSpaceOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    /// Distinct nonzero subgroups in canonical order; always contains `Z^d`.
    pub subgroups: Vec<Subgroup>,
    pub completeness: Completeness,
    pub method: Method,
    /// The cap that truncated the closure, when it did.
    pub cap_hit: Option<usize>,
}

impl ConstraintSet {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Builds a set from an explicit list; `Z^d` is added and `{0}` dropped.
    pub fn from_subgroups(dim: usize, list: impl IntoIterator<Item = Subgroup>) -> Self {
        let mut set: BTreeSet<Subgroup> = list.into_iter().filter(|s| !s.is_trivial()).collect();
        set.insert(Subgroup::full(dim));
        ConstraintSet {
            subgroups: set.into_iter().collect(),
            completeness: Completeness::Partial,
            method: Method::KernelClosure,
            cap_hit: None,
        }
    }
}

/// True iff every row is a standard basis vector and no row repeats.
pub fn is_coordinate_projection(phi: &IntMatrix) -> bool {
    if phi.rows() == 0 {
        return false;
    }
    let mut seen = BTreeSet::new();
    for r in 0..phi.rows() {
        let row = phi.row(r);
        let nonzero: Vec<usize> = (0..row.len()).filter(|&c| !row[c].is_zero()).collect();
        if nonzero.len() != 1 || !row[nonzero[0]].is_one() || !seen.insert(nonzero[0]) {
            return false;
        }
    }
    true
}

pub fn generate_constraints(p: &HblProblem, max_closure_size: usize) -> ConstraintSet {
    let d = p.dim();
    let full = Subgroup::full(d);

    let kernels: BTreeSet<Subgroup> = p
        .maps()
        .iter()
        .map(kernel_basis)
        .filter(|k| !k.is_trivial())
        .collect();
    if kernels.is_empty() {
        return ConstraintSet {
            subgroups: alloc::vec![full],
            completeness: Completeness::Complete,
            method: Method::FullSpaceOnly,
            cap_hit: None,
        };
    }

    if p.maps().iter().all(is_coordinate_projection) && d < usize::BITS as usize {
        let count = (1usize << d) - 1;
        if count <= max_closure_size {
            let subgroups: BTreeSet<Subgroup> = (1..=count)
                .map(|mask| {
                    let idx: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
                    Subgroup::coordinate(d, &idx)
                })
                .collect();
            return ConstraintSet {
                subgroups: subgroups.into_iter().collect(),
                completeness: Completeness::Complete,
                method: Method::CoordinateProjections,
                cap_hit: None,
            };
        }
    }

    let (closure, stabilized) = lattice_closure(kernels, max_closure_size);
    let mut set: BTreeSet<Subgroup> = closure.into_iter().collect();
    set.insert(full);
    let method = if p.num_maps() <= 3 {
        Method::FewMaps
    } else {
        Method::KernelClosure
    };
    ConstraintSet {
        subgroups: set.into_iter().collect(),
        completeness: if stabilized {
            Completeness::Complete
        } else {
            Completeness::Partial
        },
        method,
        cap_hit: (!stabilized).then_some(max_closure_size),
    }
}

/// Closes `seed` under pairwise sums and nonzero intersections.
///
/// Returns the elements found (in discovery order) and whether the closure
/// stabilized before exceeding `cap` elements.
pub fn lattice_closure(
    seed: impl IntoIterator<Item = Subgroup>,
    cap: usize,
) -> (Vec<Subgroup>, bool) {
    let mut items: Vec<Subgroup> = Vec::new();
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    for s in seed {
        if !s.is_trivial() && seen.insert(s.clone()) {
            items.push(s);
        }
    }
    // every pair (i, j) with j < i is processed once, when i is reached
    let mut i = 0;
    while i < items.len() {
        for j in 0..i {
            let (a, b) = (&items[i], &items[j]);
            let candidates = [a.sum(b), a.intersect(b)];
            for c in candidates {
                if c.is_trivial() || seen.contains(&c) {
                    continue;
                }
                if items.len() >= cap {
                    return (items, false);
                }
                seen.insert(c.clone());
                items.push(c);
            }
        }
        i += 1;
    }
    (items, true)
}
