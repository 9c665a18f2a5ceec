use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::TileSpec;
use crate::intlinalg::snf;
use crate::{Error, Result};

/// One generator of the scaled lattice `T1`: `step * element`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeStep {
    pub element: Vec<BigInt>,
    pub step: BigUint,
}

impl LatticeStep {
    pub fn vector(&self) -> Vec<BigInt> {
        let s = BigInt::from(self.step.clone());
        self.element.iter().map(|x| x * &s).collect()
    }
}

/// A tile together with translations `T = T1 + T2 + T3` that tile `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingResult {
    pub spec: TileSpec,
    /// Lattice generated by each element times its side count.
    pub t1: Vec<LatticeStep>,
    /// Free directions outside the span of the elements (integer combinations).
    pub t2: Vec<Vec<BigInt>>,
    /// Coset representatives of the element lattice inside its saturation.
    pub t3: Vec<Vec<BigInt>>,
    /// Nonzero Smith diagonal of the element matrix.
    pub invariant_factors: Vec<BigInt>,
}

impl TilingResult {
    /// Generators of the full translation lattice `T1 + T2`, as columns.
    pub fn lattice_generators(&self) -> Vec<Vec<BigInt>> {
        self.t1
            .iter()
            .map(LatticeStep::vector)
            .chain(self.t2.iter().cloned())
            .collect()
    }
}

/// [`build_tiling_with_budget`] with the crate default budget.
pub fn build_tiling(spec: &TileSpec) -> Result<TilingResult> {
    build_tiling_with_budget(spec, crate::DEFAULT_BUDGET)
}

/// Computes the translation sets for `spec` from the Smith form `E = U D V^{-1}`
/// of its element matrix. Fails if more than `budget` coset representatives
/// would be listed.
pub fn build_tiling_with_budget(spec: &TileSpec, budget: u64) -> Result<TilingResult> {
    let e = spec.element_matrix();
    let m = e.cols();
    let d = spec.dim();
    let f = snf(&e);
    if f.rank() != m {
        return Err(Error::DependentElements);
    }
    let factors = f.invariant_factors();

    let t1 = spec
        .elements()
        .into_iter()
        .zip(spec.element_sides())
        .map(|(element, step)| LatticeStep { element, step })
        .collect();
    let t2 = (m..d).map(|c| f.u.column(c)).collect();

    let count: BigInt = factors.iter().product();
    if count > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: count.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    // mixed-radix count over b_i in 0..d_i
    let radices: Vec<u64> = factors
        .iter()
        .map(|x| x.to_u64().expect("bounded by budget"))
        .collect();
    let mut b = alloc::vec![0u64; m];
    let mut t3 = Vec::new();
    loop {
        let mut rep = alloc::vec![BigInt::zero(); d];
        for (i, &bi) in b.iter().enumerate() {
            if bi != 0 {
                for (r, x) in rep.iter_mut().enumerate() {
                    *x += f.u.get(r, i) * BigInt::from(bi);
                }
            }
        }
        t3.push(rep);
        let mut i = 0;
        while i < m && b[i] + 1 == radices[i] {
            b[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        b[i] += 1;
    }

    Ok(TilingResult {
        spec: spec.clone(),
        t1,
        t2,
        t3,
        invariant_factors: factors,
    })
}
