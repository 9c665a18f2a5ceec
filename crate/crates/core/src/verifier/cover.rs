use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::tile_points;
use crate::intlinalg::IntMatrix;
use crate::tiler::TilingResult;
use crate::{Error, Rational, Result};

/// Outcome of a cover check on the window `[-R, R]^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub radius: u64,
    pub window_points: u64,
    pub uncovered: u64,
    pub multiply_covered: u64,
    pub translates_examined: u64,
}

impl CoverReport {
    /// Every window point is covered exactly once.
    pub fn is_exact(&self) -> bool {
        self.uncovered == 0 && self.multiply_covered == 0
    }
}

fn budget_err(needed: u128, budget: u64) -> Error {
    Error::BudgetExceeded { needed, budget }
}

/// Counts how many translates `tau + S`, `tau` in `T1 + T2 + T3`, cover each
/// point of `[-R, R]^d`.
///
/// Every translate meeting the window has `tau` in the box
/// `[-R - max s, R - min s]`; all lattice combinations landing there are
/// enumerated, so the count is exhaustive.
pub fn cover_report(t: &TilingResult, radius: u64, budget: u64) -> Result<CoverReport> {
    let d = t.spec.dim();
    let r = i64::try_from(radius).map_err(|_| Error::Overflow)?;
    let width = 2 * radius + 1;
    let window = (width as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if window > u128::from(budget) {
        return Err(budget_err(window, budget));
    }
    let tile = tile_points(&t.spec, budget)?;

    let gens: Vec<Vec<BigInt>> =
        t.t1.iter()
            .map(|s| s.vector())
            .chain(t.t2.iter().cloned())
            .collect();
    let g = IntMatrix::from_columns(d, &gens)?;
    if g.rows() != g.cols() {
        return Err(Error::InvalidTileSpec(
            "translation lattice is not full rank".into(),
        ));
    }
    let inv = g
        .rational_inverse()
        .ok_or_else(|| Error::InvalidTileSpec("translation lattice is not full rank".into()))?;
    let gens: Vec<Vec<i128>> = gens
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i128().ok_or(Error::Overflow))
                .collect()
        })
        .collect::<Result<_>>()?;

    // box of admissible translation vectors
    let mut lo = alloc::vec![i64::MAX; d];
    let mut hi = alloc::vec![i64::MIN; d];
    for s in &tile {
        for k in 0..d {
            lo[k] = lo[k].min(-r - s[k]);
            hi[k] = hi[k].max(r - s[k]);
        }
    }

    let mut counts = alloc::vec![0u32; window as usize];
    let mut examined = 0u64;
    for rep in &t.t3 {
        let rep: Vec<i128> = rep
            .iter()
            .map(|x| x.to_i128().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        // coefficient bounds from the inverse over the shifted box
        let mut c_lo = Vec::with_capacity(d);
        let mut c_hi = Vec::with_capacity(d);
        for row in &inv {
            let (mut a, mut b) = (Rational::zero(), Rational::zero());
            for k in 0..d {
                let l = Rational::from_integer(BigInt::from(i128::from(lo[k]) - rep[k]));
                let h = Rational::from_integer(BigInt::from(i128::from(hi[k]) - rep[k]));
                let (x, y) = (&row[k] * &l, &row[k] * &h);
                if x <= y {
                    a += x;
                    b += y;
                } else {
                    a += y;
                    b += x;
                }
            }
            c_lo.push(a.ceil().to_integer().to_i64().ok_or(Error::Overflow)?);
            c_hi.push(b.floor().to_integer().to_i64().ok_or(Error::Overflow)?);
        }
        let combos = c_lo
            .iter()
            .zip(&c_hi)
            .try_fold(1u128, |acc, (a, b)| {
                acc.checked_mul((b - a + 1).max(0) as u128)
            })
            .unwrap_or(u128::MAX);
        if combos.saturating_mul(tile.len() as u128) > u128::from(budget) * 16 {
            return Err(budget_err(
                combos.saturating_mul(tile.len() as u128),
                budget,
            ));
        }
        if c_lo.iter().zip(&c_hi).any(|(a, b)| a > b) {
            continue;
        }
        let mut c = c_lo.clone();
        loop {
            let mut tau = rep.clone();
            for (cj, gj) in c.iter().zip(&gens) {
                for k in 0..d {
                    tau[k] += i128::from(*cj) * gj[k];
                }
            }
            if (0..d).all(|k| tau[k] >= i128::from(lo[k]) && tau[k] <= i128::from(hi[k])) {
                examined += 1;
                for s in &tile {
                    let mut idx = 0u128;
                    let mut inside = true;
                    for k in (0..d).rev() {
                        let x = tau[k] + i128::from(s[k]);
                        if x < -i128::from(r) || x > i128::from(r) {
                            inside = false;
                            break;
                        }
                        idx = idx * u128::from(width) + (x + i128::from(r)) as u128;
                    }
                    if inside {
                        counts[idx as usize] += 1;
                    }
                }
            }
            // odometer over the coefficient box
            let mut j = 0;
            while j < d && c[j] == c_hi[j] {
                c[j] = c_lo[j];
                j += 1;
            }
            if j == d {
                break;
            }
            c[j] += 1;
        }
    }

    Ok(CoverReport {
        radius,
        window_points: window as u64,
        uncovered: counts.iter().filter(|&&c| c == 0).count() as u64,
        multiply_covered: counts.iter().filter(|&&c| c > 1).count() as u64,
        translates_examined: examined,
    })
}

/// Whether the translates of the tile cover `[-R, R]^d` exactly once.
pub fn check_cover(t: &TilingResult, radius: u64, budget: u64) -> Result<bool> {
    cover_report(t, radius, budget).map(|r| r.is_exact())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiler::{build_tiling, TileGroup, TileSpec};
    use alloc::vec;
    use num_traits::One;

    fn a1() -> TilingResult {
        let spec = TileSpec::new(
            2,
            vec![TileGroup::from_i64(&[&[2, 1], &[1, 3]], Rational::one())],
            3,
        )
        .unwrap();
        build_tiling(&spec).unwrap()
    }

    #[test]
    fn a1_covers_exactly() {
        let rep = cover_report(&a1(), 12, 1_000_000).unwrap();
        assert!(rep.is_exact(), "{rep:?}");
        assert_eq!(rep.window_points, 625);
    }

    #[test]
    fn dropping_a_coset_leaves_holes() {
        let mut t = a1();
        t.t3.pop();
        let rep = cover_report(&t, 12, 1_000_000).unwrap();
        assert!(rep.uncovered > 0);
        assert!(!rep.is_exact());
    }

    #[test]
    fn duplicated_coset_double_covers() {
        let mut t = a1();
        let first = t.t3[0].clone();
        t.t3.push(first);
        let rep = cover_report(&t, 5, 1_000_000).unwrap();
        assert!(rep.multiply_covered > 0);
    }

    #[test]
    fn line_tiles() {
        let spec =
            TileSpec::new(1, vec![TileGroup::from_i64(&[&[1]], Rational::one())], 4).unwrap();
        assert!(check_cover(&build_tiling(&spec).unwrap(), 10, 1000).unwrap());
    }

    #[test]
    fn rank_deficient_tile_uses_free_directions() {
        let half = Rational::new(1.into(), 2.into());
        let spec = TileSpec::new(
            4,
            vec![TileGroup::from_i64(
                &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, -1, 0]],
                half,
            )],
            16,
        )
        .unwrap();
        assert!(check_cover(&build_tiling(&spec).unwrap(), 3, 1_000_000).unwrap());
    }
}
