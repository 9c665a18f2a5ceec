use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::{build_tiling, TileGroup, TileSpec, TilingResult};
use crate::intlinalg::{kernel_basis, IntMatrix, Subgroup};
use crate::{Error, HblProblem, Rational, Result};

/// How a tiling was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// `d` rank-one maps: one side of `floor(M/d)` per kernel-intersection direction.
    RankOne,
    /// More rank-one maps than dimensions: a plain cube of side `floor(M/n)`.
    RankOneCube,
    /// `k` rank `d-1` maps with independent kernels.
    RankDMinusOne,
    /// Rank `d-1` maps whose kernels are dependent: a cube in their span.
    RankDMinusOneSpan,
    /// Flag parallelepiped built from an optimal dual vector.
    Flag,
}

impl Construction {
    /// Whether `sum_i |phi_i(S)| <= M` and `|S| ~ gamma M^{s_HBL}` are guaranteed.
    pub fn is_exact(self) -> bool {
        matches!(self, Construction::RankOne | Construction::RankDMinusOne)
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::RankOne => "rank-one",
            Construction::RankOneCube => "rank-one-cube",
            Construction::RankDMinusOne => "rank-d-minus-one",
            Construction::RankDMinusOneSpan => "rank-d-minus-one-span",
            Construction::Flag => "flag",
        }
    }
}

/// A tiling tagged with the construction that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedTiling {
    pub tiling: TilingResult,
    pub construction: Construction,
}

fn stacked(maps: impl Iterator<Item = IntMatrix>, dim: usize) -> IntMatrix {
    maps.fold(IntMatrix::zeros(0, dim), |acc, m| acc.vstack(&m))
}

/// Primitive generator of a rank-one subgroup.
pub fn kernel_generator(phi: &IntMatrix) -> Option<Vec<BigInt>> {
    let k = kernel_basis(phi);
    (k.rank() == 1).then(|| k.basis().column(0))
}

/// `e_i`: primitive generator of the intersection of the kernels of every map but `i`.
pub fn rank_one_elements(p: &HblProblem) -> Result<Vec<Vec<BigInt>>> {
    let d = p.dim();
    let n = p.num_maps();
    for (i, m) in p.maps().iter().enumerate() {
        if m.rank() != 1 {
            return Err(Error::NotRankOne(i + 1));
        }
    }
    if n < d {
        return Err(Error::FewerMapsThanDim { maps: n, dim: d });
    }
    if !kernel_basis(&stacked(p.maps().iter().cloned(), d)).is_trivial() {
        return Err(Error::KernelsIntersect);
    }
    if n > d {
        return Ok(Vec::new());
    }
    (0..n)
        .map(|i| {
            let others = stacked(
                p.maps()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, m)| m.clone()),
                d,
            );
            kernel_generator(&others).ok_or(Error::KernelsIntersect)
        })
        .collect()
}

fn memory_share(m: u64, parts: usize) -> u64 {
    (m / parts as u64).max(1)
}

/// Exactly optimal tiling for `d` rank-one maps whose kernels meet only in zero.
///
/// With more than `d` such maps the result is an asymptotically optimal cube
/// instead, tagged [`Construction::RankOneCube`].
pub fn rank_one_tiling(p: &HblProblem, m: u64) -> Result<ConstructedTiling> {
    let d = p.dim();
    let elements = rank_one_elements(p)?;
    let (elements, memory, construction) = if elements.is_empty() {
        let cube = Subgroup::full(d).generators();
        (
            cube,
            memory_share(m, p.num_maps()),
            Construction::RankOneCube,
        )
    } else {
        (elements, memory_share(m, d), Construction::RankOne)
    };
    let spec = TileSpec::new(
        d,
        alloc::vec![TileGroup::new(elements, Rational::one())],
        memory,
    )?;
    Ok(ConstructedTiling {
        tiling: build_tiling(&spec)?,
        construction,
    })
}

/// Primitive kernel generators of rank `d-1` maps and the rank of their span.
fn rank_d_minus_one_kernels(p: &HblProblem) -> Result<(Vec<Vec<BigInt>>, Subgroup)> {
    let d = p.dim();
    let mut gens = Vec::with_capacity(p.num_maps());
    for (i, phi) in p.maps().iter().enumerate() {
        if d < 2 || phi.rank() != d - 1 {
            return Err(Error::NotRankDMinusOne(i + 1));
        }
        gens.push(kernel_generator(phi).expect("rank d-1 map has a rank one kernel"));
    }
    let h = Subgroup::span_columns(d, &gens);
    if h.rank() < 2 {
        return Err(Error::KernelsIntersect);
    }
    Ok((gens, h))
}

/// The exactly optimal construction that applies to `p`, if any.
pub fn exact_construction(p: &HblProblem) -> Option<Construction> {
    if rank_one_elements(p).is_ok_and(|e| !e.is_empty()) {
        return Some(Construction::RankOne);
    }
    match rank_d_minus_one_kernels(p) {
        Ok((gens, h)) if gens.len() == h.rank() => Some(Construction::RankDMinusOne),
        _ => None,
    }
}

/// Exactly optimal tiling for `k` rank `d-1` maps with independent kernels:
/// scaling `1/(k-1)` along the kernel generators at memory `floor(M/k)`.
///
/// When the kernels are dependent, the span `H` of all kernels (rank `k`)
/// gets a cube at scaling `1/(k-1)` and memory `M`, tagged
/// [`Construction::RankDMinusOneSpan`].
pub fn rank_d_minus_one_tiling(p: &HblProblem, m: u64) -> Result<ConstructedTiling> {
    let d = p.dim();
    let (gens, h) = rank_d_minus_one_kernels(p)?;
    let k = h.rank();
    let scaling = Rational::new(BigInt::one(), BigInt::from(k - 1));
    let (elements, memory, construction) = if k == p.num_maps() {
        (gens, memory_share(m, k), Construction::RankDMinusOne)
    } else {
        (h.generators(), m, Construction::RankDMinusOneSpan)
    };
    let spec = TileSpec::new(d, alloc::vec![TileGroup::new(elements, scaling)], memory)?;
    Ok(ConstructedTiling {
        tiling: build_tiling(&spec)?,
        construction,
    })
}
