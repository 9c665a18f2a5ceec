use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::tiler::TileSpec;
use crate::{Error, HblProblem, Rational, Result};

/// Largest `a` with `a^q <= m^p`, found by bisection.
pub fn side_count(m: u64, k: &Rational) -> BigUint {
    let p = k.numer().to_u32().expect("small exponent");
    let q = k.denom().to_u32().expect("small exponent");
    let target = BigUint::from(m).pow(p);
    // a <= m^p, and m^p^(1/q) <= m^p
    let (mut lo, mut hi) = (BigUint::zero(), target.clone() + 1u32);
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(q) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Every point `sum_j a_j e_j` of the tile, with `0 <= a_j < side_j`.
pub fn tile_points(spec: &TileSpec, budget: u64) -> Result<Vec<Vec<i64>>> {
    let mut sides = Vec::new();
    let mut elements = Vec::new();
    let mut total = BigUint::one();
    for g in spec.groups() {
        let side = side_count(spec.memory(), &g.scaling);
        for e in &g.elements {
            total *= &side;
            sides.push(side.clone());
            elements.push(
                e.iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    if total > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: total.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    let mut points = alloc::vec![alloc::vec![0i64; spec.dim()]];
    for (e, side) in elements.iter().zip(&sides) {
        let side = side.to_i64().expect("bounded by budget");
        let mut next = Vec::with_capacity(points.len() * side as usize);
        for p in &points {
            for a in 0..side {
                let q = p
                    .iter()
                    .zip(e)
                    .map(|(x, y)| {
                        a.checked_mul(*y)
                            .and_then(|t| t.checked_add(*x))
                            .ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<_>>>()?;
                next.push(q);
            }
        }
        points = next;
    }
    Ok(points)
}

/// `|phi_i(points)|` for each map, by deduplicating mapped points.
pub fn image_counts_of(points: &[Vec<i64>], p: &HblProblem) -> Result<Vec<u64>> {
    p.maps()
        .iter()
        .map(|phi| {
            let rows: Vec<Vec<i128>> = (0..phi.rows())
                .map(|r| {
                    phi.row(r)
                        .iter()
                        .map(|x| x.to_i128().ok_or(Error::Overflow))
                        .collect()
                })
                .collect::<Result<_>>()?;
            let mut seen = BTreeSet::new();
            for x in points {
                let img: Vec<i128> = rows
                    .iter()
                    .map(|row| row.iter().zip(x).map(|(a, &b)| a * i128::from(b)).sum())
                    .collect();
                seen.insert(img);
            }
            Ok(seen.len() as u64)
        })
        .collect()
}

/// `|phi_i(S)|` for each map.
pub fn count_images(spec: &TileSpec, p: &HblProblem, budget: u64) -> Result<Vec<u64>> {
    if spec.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: spec.dim(),
        });
    }
    image_counts_of(&tile_points(spec, budget)?, p)
}
