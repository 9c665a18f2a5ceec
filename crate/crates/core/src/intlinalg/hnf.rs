use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column Hermite normal form of `a`, with the zero columns dropped.
///
/// The result has the same column lattice as `a`. Pivots sit in strictly
/// increasing rows, are positive, and every entry left of a pivot in the
/// pivot row lies in `[0, pivot)`. The form is unique per lattice.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let (h, _, rank) = hnf_with_transform(a);
    let keep: alloc::vec::Vec<usize> = (0..rank).collect();
    h.select_columns(&keep)
}

/// Returns `(H, W, r)` with `H = A * W`, `W` unimodular, the first `r` columns
/// of `H` in column Hermite normal form and the remaining columns zero.
///
/// The last `n - r` columns of `W` therefore span the integer kernel of `A`.
pub fn hnf_with_transform(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let (rows, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut w = IntMatrix::identity(n);
    let mut k = 0;
    for i in 0..rows {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h.get(i, j).is_zero() {
                continue;
            }
            if h.get(i, k).is_zero() {
                h.swap_cols(k, j);
                w.swap_cols(k, j);
                continue;
            }
            let (pa, pb) = (h.get(i, k).clone(), h.get(i, j).clone());
            if pb.is_multiple_of(&pa) {
                let q = &pb / &pa;
                h.sub_col_multiple(j, k, &q);
                w.sub_col_multiple(j, k, &q);
            } else {
                let e = pa.extended_gcd(&pb);
                let (r, s) = (-(&pb / &e.gcd), &pa / &e.gcd);
                h.combine_cols(k, j, &e.x, &e.y, &r, &s);
                w.combine_cols(k, j, &e.x, &e.y, &r, &s);
            }
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k);
            w.negate_col(k);
        }
        let pivot = h.get(i, k).clone();
        for j in 0..k {
            let q: BigInt = h.get(i, j).div_floor(&pivot);
            h.sub_col_multiple(j, k, &q);
            w.sub_col_multiple(j, k, &q);
        }
        k += 1;
    }
    (h, w, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn cols(d: usize, c: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_columns_i64(d, c).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(hnf(&IntMatrix::identity(3)), IntMatrix::identity(3));
    }

    #[test]
    fn single_column_is_not_saturated() {
        assert_eq!(hnf(&cols(2, &[&[4, 6]])), cols(2, &[&[4, 6]]));
        assert_eq!(hnf(&cols(2, &[&[-4, -6]])), cols(2, &[&[4, 6]]));
    }

    #[test]
    fn index_five_lattice() {
        let a = cols(2, &[&[2, 1], &[1, 3]]);
        let h = hnf(&a);
        assert_eq!(h.rows(), 2);
        assert_eq!(h.cols(), 2);
        assert_eq!(h.det(), BigInt::from(5));
        // Brute-force membership in [-6,6]^2: a point lies in the lattice iff
        // it is an integer combination of the generators with small coefficients.
        let in_span = |gens: &IntMatrix, x: i64, y: i64| {
            (-20i64..=20).any(|p| {
                (-20i64..=20).any(|q| {
                    let g = gens.columns();
                    let px = BigInt::from(p) * &g[0][0] + BigInt::from(q) * &g[1][0];
                    let py = BigInt::from(p) * &g[0][1] + BigInt::from(q) * &g[1][1];
                    px == BigInt::from(x) && py == BigInt::from(y)
                })
            })
        };
        for x in -6..=6 {
            for y in -6..=6 {
                assert_eq!(in_span(&a, x, y), in_span(&h, x, y), "point ({x},{y})");
            }
        }
    }

    #[test]
    fn transform_gives_kernel_columns() {
        let a = IntMatrix::from_rows_i64(3, &[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        let (h, w, r) = hnf_with_transform(&a);
        assert_eq!(r, 1);
        assert_eq!(a.mul(&w), h);
        assert!(w.is_unimodular());
        let kernel: Vec<usize> = (r..3).collect();
        assert!(a.mul(&w.select_columns(&kernel)).is_zero());
    }

    #[test]
    fn dependent_columns_dropped() {
        let h = hnf(&cols(3, &[&[1, 0, 0], &[2, 0, 0], &[0, 0, 0]]));
        assert_eq!(h, cols(3, &[&[1, 0, 0]]));
    }
}
