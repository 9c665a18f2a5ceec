#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;

use hbl_core::intlinalg::{kernel_basis, IntMatrix, Subgroup};
use hbl_core::{BigInt, HblProblem, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("fits")).collect()
}

/// `phi_1 = (3 -1)`, `phi_2 = (1 -2)` on `Z^2`.
pub fn rank_one_pair() -> HblProblem {
    HblProblem::from_rows(2, &[&[&[3, -1]], &[&[1, -2]]]).unwrap()
}

/// Four maps on `Z^4` from the nest `A1[e1,e3] A2[e2,e4] A3[e1,e2,e3+e4] A4[e1+e2,e3,e4]`.
pub fn four_array_nest() -> HblProblem {
    HblProblem::from_rows(
        4,
        &[
            &[&[1, 0, 0, 0], &[0, 0, 1, 0]],
            &[&[0, 1, 0, 0], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]],
            &[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        ],
    )
    .unwrap()
}

/// Kernel generators (as rows) of the three maps on `Z^8`.
pub const EIGHT_DIM_KERNELS: [&[&[i64]]; 3] = [
    &[
        &[1, 0, 0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 0, 0],
    ],
    &[
        &[0, 1, 0, 0, 0, 0, 0, 1],
        &[0, 0, 1, 0, 1, 1, 0, 1],
        &[0, 0, 0, 0, 0, 1, 0, 1],
        &[1, 1, 0, 0, 0, 0, 1, 0],
    ],
    &[
        &[1, 0, 1, 0, 0, 0, 0, 0],
        &[0, 1, 1, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1, 1],
    ],
];

/// A map whose kernel is the saturated span of the given rows.
pub fn map_with_kernel(dim: usize, kernel_rows: &[&[i64]]) -> IntMatrix {
    let k = IntMatrix::from_rows_i64(dim, kernel_rows).unwrap();
    kernel_basis(&k).basis().transpose()
}

/// Three maps on `Z^8` given by their kernels.
pub fn eight_dim_problem() -> HblProblem {
    HblProblem::new(
        8,
        EIGHT_DIM_KERNELS
            .iter()
            .map(|k| map_with_kernel(8, k))
            .collect(),
    )
    .unwrap()
}

/// `C[i,j] A[i,k] B[k,j]`.
pub fn matmul() -> HblProblem {
    HblProblem::from_rows(
        3,
        &[
            &[&[1, 0, 0], &[0, 1, 0]],
            &[&[1, 0, 0], &[0, 0, 1]],
            &[&[0, 0, 1], &[0, 1, 0]],
        ],
    )
    .unwrap()
}

pub fn span(dim: usize, cols: &[&[i64]]) -> Subgroup {
    Subgroup::span_i64(dim, cols)
}

pub fn point_set(points: impl IntoIterator<Item = Vec<i64>>) -> BTreeSet<Vec<i64>> {
    points.into_iter().collect()
}

/// Shifts a point set so that its coordinatewise minimum is the origin.
pub fn normalized(points: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    let d = points.iter().next().map_or(0, Vec::len);
    let mins: Vec<i64> = (0..d)
        .map(|k| points.iter().map(|p| p[k]).min().unwrap())
        .collect();
    points
        .iter()
        .map(|p| p.iter().zip(&mins).map(|(x, m)| x - m).collect())
        .collect()
}
