use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{image_counts_of, tile_points};
use crate::float::{exp, ln};
use crate::lp::GammaEnclosure;
use crate::tiler::TileSpec;
use crate::{Error, HblProblem, Rational, Result};

/// Counts for one memory value of an exact-optimality sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityEntry {
    pub memory: u64,
    pub point_count: u64,
    pub image_counts: Vec<u64>,
    /// `sum_i |phi_i(S)|`
    pub memory_sum: u64,
    pub within_memory: bool,
    /// `|S| / (gamma M^{s_HBL})`
    pub ratio: f64,
}

/// Enumerates the tile for each `M` and records the memory sum and the ratio
/// of `|S|` to `gamma M^{s_HBL}`.
pub fn check_exact_optimality(
    p: &HblProblem,
    gamma: &GammaEnclosure,
    s_hbl: &Rational,
    ms: &[u64],
    mut spec_for: impl FnMut(u64) -> Result<TileSpec>,
    budget: u64,
) -> Result<Vec<OptimalityEntry>> {
    let s = s_hbl.to_f64().unwrap_or(f64::NAN);
    ms.iter()
        .map(|&m| {
            let spec = spec_for(m)?;
            let points = tile_points(&spec, budget)?;
            let image_counts = image_counts_of(&points, p)?;
            let memory_sum: u64 = image_counts.iter().sum();
            let count = points.len() as u64;
            let ratio = exp(ln(count as f64) - gamma.ln_gamma() - s * ln(m as f64));
            Ok(OptimalityEntry {
                memory: m,
                point_count: count,
                image_counts,
                memory_sum,
                within_memory: memory_sum <= m,
                ratio,
            })
        })
        .collect()
}

/// `count <= prod_i images_i^{s_i}`, compared exactly after raising both sides
/// to the common denominator of the exponents.
pub fn hbl_bound_holds(count: u64, images: &[u64], s: &[Rational]) -> Result<bool> {
    if images.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: images.len(),
            found: s.len(),
        });
    }
    if s.iter().any(Signed::is_negative) {
        return Err(Error::InvalidProblem(
            "exponents must be nonnegative".into(),
        ));
    }
    let l = s.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let l32 = l.to_u32().ok_or(Error::Overflow)?;
    let lhs = BigUint::from(count).pow(l32);
    let mut rhs = BigUint::one();
    for (&c, si) in images.iter().zip(s) {
        let e = (si * Rational::from_integer(l.clone()))
            .to_integer()
            .to_u32()
            .ok_or(Error::Overflow)?;
        rhs *= BigUint::from(c).pow(e);
    }
    Ok(lhs <= rhs)
}

/// Enumerates the tile and checks the HBL inequality with exponents `s`.
pub fn check_hbl_bound(
    spec: &TileSpec,
    p: &HblProblem,
    s: &[Rational],
    budget: u64,
) -> Result<bool> {
    let points = tile_points(spec, budget)?;
    let images = image_counts_of(&points, p)?;
    hbl_bound_holds(points.len() as u64, &images, s)
}
