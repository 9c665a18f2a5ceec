use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::intlinalg::{image_rank, Subgroup};
use crate::{HblProblem, Rational};

/// Finitely supported nonnegative weights on subgroups of `Z^d`.
///
/// Entries are strictly positive; setting a weight to zero removes it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualVector {
    entries: BTreeMap<Subgroup, Rational>,
}

impl DualVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Subgroup, Rational)>) -> Self {
        let mut y = Self::new();
        for (h, v) in entries {
            y.add(h, &v);
        }
        y
    }

    pub fn get(&self, h: &Subgroup) -> Rational {
        self.entries.get(h).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sets `y_H`; zero removes the entry. Panics on negative values.
    pub fn set(&mut self, h: Subgroup, v: Rational) {
        assert!(!v.is_negative(), "dual weights are nonnegative");
        if v.is_zero() {
            self.entries.remove(&h);
        } else {
            self.entries.insert(h, v);
        }
    }

    /// `y_H += v`.
    pub fn add(&mut self, h: Subgroup, v: &Rational) {
        let cur = self.get(&h);
        self.set(h, cur + v);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Support in canonical subgroup order.
    pub fn support(&self) -> impl Iterator<Item = &Subgroup> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Subgroup, &Rational)> {
        self.entries.iter()
    }

    /// `1ᵀy`.
    pub fn total(&self) -> Rational {
        self.entries.values().sum()
    }

    /// `val(y) = sum_H y_H rank(H)`.
    pub fn value(&self) -> Rational {
        self.entries
            .iter()
            .map(|(h, v)| v * Rational::from_integer(h.rank().into()))
            .sum()
    }
}

/// Returns `(val(y), [C_1(y), ..., C_n(y)])` with `C_i(y) = sum_H y_H rank(phi_i(H))`.
pub fn eval_dual(y: &DualVector, p: &HblProblem) -> (Rational, Vec<Rational>) {
    let mut c = vec![Rational::zero(); p.num_maps()];
    for (h, v) in y.iter() {
        for (ci, phi) in c.iter_mut().zip(p.maps()) {
            let r = image_rank(phi, h);
            if r > 0 {
                *ci += v * Rational::from_integer(r.into());
            }
        }
    }
    (y.value(), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_support() {
        let p = HblProblem::from_rows(2, &[&[&[1, 0]], &[&[0, 1]]]).unwrap();
        let (val, c) = eval_dual(&DualVector::new(), &p);
        assert!(val.is_zero());
        assert!(c.iter().all(Zero::is_zero));
    }

    #[test]
    fn zero_entries_are_pruned() {
        let mut y = DualVector::new();
        let h = Subgroup::full(2);
        y.set(h.clone(), Rational::from_integer(1.into()));
        y.add(h.clone(), &Rational::from_integer((-1).into()));
        assert!(y.is_empty());
    }
}
