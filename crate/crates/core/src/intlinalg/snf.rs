use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Subgroup};

/// `A = U * D * V^{-1}` with `U`, `V` unimodular and `D` diagonal.
///
/// The nonzero diagonal entries come first, are positive, and form a
/// divisibility chain; zero entries follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero diagonal entries (the rank of the input).
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Row operation recorded on `D` as `D <- G * D`; `U` absorbs `G^{-1}` on the right.
struct Snf {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Snf {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    /// `row_b <- row_b - k * row_a`.
    fn sub_row(&mut self, b: usize, a: usize, k: &BigInt) {
        self.d.sub_row_multiple(b, a, k);
        // inverse op adds k * row_a back: U <- U * G^{-1} means col_a += k * col_b
        self.u.sub_col_multiple(a, b, &-k);
    }

    /// `col_b <- col_b - k * col_a`.
    fn sub_col(&mut self, b: usize, a: usize, k: &BigInt) {
        self.d.sub_col_multiple(b, a, k);
        self.v.sub_col_multiple(b, a, k);
    }

    /// Replaces `D[t][t]` by `gcd(D[t][t], D[i][t])` and zeroes `D[i][t]`.
    fn gcd_rows(&mut self, t: usize, i: usize) {
        let (a, b) = (self.d.get(t, t).clone(), self.d.get(i, t).clone());
        if b.is_multiple_of(&a) {
            self.sub_row(i, t, &(&b / &a));
            return;
        }
        let e = a.extended_gcd(&b);
        let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
        // G = [[x, y], [-b/g, a/g]], G^{-1} = [[a/g, -y], [b/g, x]]
        self.d.combine_rows(t, i, &e.x, &e.y, &-&bg, &ag);
        self.u.combine_cols(t, i, &ag, &bg, &-&e.y, &e.x);
    }

    /// Replaces `D[t][t]` by `gcd(D[t][t], D[t][j])` and zeroes `D[t][j]`.
    fn gcd_cols(&mut self, t: usize, j: usize) {
        let (a, b) = (self.d.get(t, t).clone(), self.d.get(t, j).clone());
        if b.is_multiple_of(&a) {
            self.sub_col(j, t, &(&b / &a));
            return;
        }
        let e = a.extended_gcd(&b);
        let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
        self.d.combine_cols(t, j, &e.x, &e.y, &-&bg, &ag);
        self.v.combine_cols(t, j, &e.x, &e.y, &-&bg, &ag);
    }
}

/// Smith normal form. Deterministic for a given input.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = Snf {
        d: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = s.d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            for i in t + 1..m {
                if !s.d.get(i, t).is_zero() {
                    s.gcd_rows(t, i);
                }
            }
            for j in t + 1..n {
                if !s.d.get(t, j).is_zero() {
                    s.gcd_cols(t, j);
                }
            }
            if (t + 1..m).any(|i| !s.d.get(i, t).is_zero()) {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = s.d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => s.sub_row(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if s.d.get(t, t).is_negative() {
            s.d.negate_row(t);
            s.u.negate_col(t);
        }
    }
    SnfResult {
        u: s.u,
        d: s.d,
        v: s.v,
    }
}

/// Saturated integer kernel `{x : A x = 0}` of a matrix with `d` columns.
///
/// The kernel is spanned by the columns of `V` at the zero positions of the
/// Smith diagonal (including positions beyond the row count).
pub fn kernel_basis(a: &IntMatrix) -> Subgroup {
    let r = snf(a);
    let zero_positions: Vec<usize> = (r.rank()..a.cols()).collect();
    Subgroup::from_saturated_columns(&r.v.select_columns(&zero_positions))
}
