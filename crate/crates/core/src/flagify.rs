//! Moving a feasible dual vector onto a chain of nested subgroups.
//!
//! While two support members `V`, `W` are incomparable, the smaller weight
//! `y_V` is shifted from `V` and `W` onto `V + W` and `V ∩ W`. Rank modularity
//! keeps `val(y)` fixed and the substitution inequality keeps every `C_i(y)`
//! from growing. Each step strictly raises the extremeness vector in reverse
//! lexicographic order, which bounds the number of steps.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;

use crate::intlinalg::Subgroup;
use crate::lp::{eval_dual, DualVector};
use crate::{Error, HblProblem, Rational, Result};

/// Strictly nested subgroups `U_1 ⊂ U_2 ⊂ ... ⊂ U_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    chain: Vec<Subgroup>,
}

impl Flag {
    /// Checks strict nesting; `None` if the list is not a chain.
    pub fn new(mut members: Vec<Subgroup>) -> Option<Flag> {
        members.sort_by_key(Subgroup::rank);
        for w in members.windows(2) {
            if w[0].rank() >= w[1].rank() || !w[1].contains(&w[0]) {
                return None;
            }
        }
        Some(Flag { chain: members })
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn top(&self) -> Option<&Subgroup> {
        self.chain.last()
    }
}

/// `w_i = sum of y_U over support members of rank i`, for `i = 1..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremenessVector(pub Vec<Rational>);

impl ExtremenessVector {
    /// Reverse lexicographic comparison: the highest rank decides first.
    pub fn cmp_reverse_lex(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

pub fn extremeness(y: &DualVector, d: usize) -> ExtremenessVector {
    let mut w = vec![Rational::from_integer(0.into()); d];
    for (h, v) in y.iter() {
        if h.rank() > 0 {
            w[h.rank() - 1] += v;
        }
    }
    ExtremenessVector(w)
}

fn comparable(a: &Subgroup, b: &Subgroup) -> bool {
    a.contains(b) || b.contains(a)
}

/// First incomparable pair of the support in canonical order.
fn incomparable_pair(y: &DualVector) -> Option<(Subgroup, Subgroup)> {
    let support: Vec<&Subgroup> = y.support().collect();
    for (i, a) in support.iter().enumerate() {
        for b in &support[i + 1..] {
            if !comparable(a, b) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

/// Performs one substitution step; returns `false` if `y` is already on a flag.
pub fn flagify_step(y: &mut DualVector) -> bool {
    let Some((a, b)) = incomparable_pair(y) else {
        return false;
    };
    // `a` precedes `b` canonically, so ties keep `a` as V
    let (v, w) = if y.get(&a) <= y.get(&b) {
        (a, b)
    } else {
        (b, a)
    };
    let yv = y.get(&v);
    let sum = v.sum(&w);
    let meet = v.intersect(&w);
    y.set(w.clone(), y.get(&w) - &yv);
    y.add(sum, &yv);
    if !meet.is_trivial() {
        y.add(meet, &yv);
    }
    y.set(v, Rational::from_integer(0.into()));
    true
}

fn check_feasible(y: &DualVector, p: &HblProblem) -> Result<()> {
    let (_, c) = eval_dual(y, p);
    let one = Rational::one();
    match c.iter().position(|ci| *ci > one) {
        Some(i) => Err(Error::InfeasibleDual {
            map: i + 1,
            value: alloc::format!("{}", c[i]),
        }),
        None => Ok(()),
    }
}

/// Runs the substitution to completion and returns the flag-supported vector.
///
/// Fails if the input violates `C_i(y) <= 1` for some map.
pub fn flagify_dual(y: &DualVector, p: &HblProblem) -> Result<(DualVector, Flag)> {
    check_feasible(y, p)?;
    let mut y = y.clone();
    while flagify_step(&mut y) {}
    let flag = Flag::new(y.support().cloned().collect()).expect("loop exits only on a chain");
    Ok((y, flag))
}
