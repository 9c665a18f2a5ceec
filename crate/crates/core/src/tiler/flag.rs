use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{TileGroup, TileSpec};
use crate::flagify::Flag;
use crate::intlinalg::{IntMatrix, Subgroup};
use crate::lp::DualVector;
use crate::{Error, Rational, Result};

/// Independent complements `Y_i` of a flag with `Y_1 + ... + Y_i = U_i`, and
/// tail-sum scalings `y'_i = y(U_i) + ... + y(U_t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagDecomposition {
    pub flag: Flag,
    pub ys: Vec<Subgroup>,
    pub scalings: Vec<Rational>,
}

impl FlagDecomposition {
    /// Flag parallelepiped at memory `m`: each `Y_i` basis at scaling `y'_i`.
    pub fn tile_spec(&self, memory: u64) -> Result<TileSpec> {
        let dim = self.ys.first().map_or(0, Subgroup::ambient_dim);
        let groups = self
            .ys
            .iter()
            .zip(&self.scalings)
            .map(|(y, k)| TileGroup::new(y.generators(), k.clone()))
            .collect();
        TileSpec::new(dim, groups, memory)
    }

    /// `sum_i y'_i rank(Y_i)`, which equals the dual value of the flag vector.
    pub fn weighted_rank(&self) -> Rational {
        self.ys
            .iter()
            .zip(&self.scalings)
            .map(|(y, k)| k * Rational::from_integer(y.rank().into()))
            .sum()
    }
}

/// Splits a flag-supported dual vector into independent complements.
///
/// Each `Y_i` is spanned by the columns of `U_i`'s canonical basis that raise
/// the rank of what has been collected so far.
pub fn flag_decompose(y: &DualVector, flag: &Flag) -> Result<FlagDecomposition> {
    if y.len() != flag.len() || flag.members().iter().any(|u| y.get(u).is_zero()) {
        return Err(Error::SupportMismatch);
    }
    let Some(top) = flag.top() else {
        return Ok(FlagDecomposition {
            flag: flag.clone(),
            ys: Vec::new(),
            scalings: Vec::new(),
        });
    };
    let dim = top.ambient_dim();

    let mut collected: Vec<Vec<BigInt>> = Vec::new();
    let mut ys = Vec::with_capacity(flag.len());
    for u in flag.members() {
        let mut added = Vec::new();
        for col in u.generators() {
            let mut trial = collected.clone();
            trial.push(col.clone());
            let rank = IntMatrix::from_columns(dim, &trial)
                .expect("uniform length")
                .rank();
            if rank > collected.len() {
                collected = trial;
                added.push(col);
            }
        }
        ys.push(Subgroup::span_columns(dim, &added));
    }

    let mut scalings: Vec<Rational> = flag.members().iter().map(|u| y.get(u)).collect();
    for i in (0..scalings.len().saturating_sub(1)).rev() {
        let next = scalings[i + 1].clone();
        scalings[i] += next;
    }
    Ok(FlagDecomposition {
        flag: flag.clone(),
        ys,
        scalings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn two_step_flag() {
        let u1 = Subgroup::span_i64(4, &[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let u2 = Subgroup::full(4);
        let flag = Flag::new(vec![u1.clone(), u2.clone()]).unwrap();
        let y = DualVector::from_entries([(u1.clone(), q(1, 4)), (u2, q(1, 4))]);
        let dec = flag_decompose(&y, &flag).unwrap();
        assert_eq!(dec.scalings, vec![q(1, 2), q(1, 4)]);
        assert_eq!(dec.ys[0], u1);
        assert_eq!(dec.ys[1].rank(), 2);
        assert!(dec.ys[0].sum(&dec.ys[1]).is_full());
        assert_eq!(dec.weighted_rank(), q(3, 2));
    }

    #[test]
    fn single_member() {
        let flag = Flag::new(vec![Subgroup::full(3)]).unwrap();
        let y = DualVector::from_entries([(Subgroup::full(3), q(2, 3))]);
        let dec = flag_decompose(&y, &flag).unwrap();
        assert_eq!(dec.scalings, vec![q(2, 3)]);
        assert_eq!(dec.ys, vec![Subgroup::full(3)]);
    }

    #[test]
    fn support_must_match() {
        let flag = Flag::new(vec![Subgroup::full(2)]).unwrap();
        let y = DualVector::from_entries([(Subgroup::coordinate(2, &[0]), q(1, 1))]);
        assert_eq!(flag_decompose(&y, &flag), Err(Error::SupportMismatch));
    }
}
