use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;

use super::{hnf, kernel_basis, IntMatrix};

/// A saturated subgroup of `Z^d`, stored by its column-HNF basis.
///
/// Equality and ordering are structural on the canonical basis, so two
/// subgroups are equal exactly when their rational spans coincide. The order
/// is by rank first, then lexicographic on the basis entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    dim: usize,
    basis: IntMatrix,
}

impl Subgroup {
    pub fn trivial(dim: usize) -> Self {
        Subgroup {
            dim,
            basis: IntMatrix::zeros(dim, 0),
        }
    }

    pub fn full(dim: usize) -> Self {
        Subgroup {
            dim,
            basis: IntMatrix::identity(dim),
        }
    }

    /// Saturated subgroup spanned by the columns of `generators` (which may be dependent).
    pub fn span(generators: &IntMatrix) -> Self {
        let dim = generators.rows();
        if generators.cols() == 0 || generators.is_zero() {
            return Self::trivial(dim);
        }
        // span_Q(G) ∩ Z^d = ker(K) where the rows of K span the integer
        // orthogonal complement of the columns of G.
        let complement = kernel_basis(&generators.transpose());
        kernel_basis(&complement.basis.transpose())
    }

    pub fn span_columns(dim: usize, columns: &[Vec<BigInt>]) -> Self {
        Self::span(&IntMatrix::from_columns(dim, columns).expect("column length equals dim"))
    }

    /// `⟨columns⟩` from small integer vectors.
    pub fn span_i64(dim: usize, columns: &[&[i64]]) -> Self {
        Self::span(&IntMatrix::from_columns_i64(dim, columns).expect("column length equals dim"))
    }

    /// Coordinate subgroup `⟨e_i : i ∈ idx⟩`.
    pub fn coordinate(dim: usize, idx: &[usize]) -> Self {
        let mut m = IntMatrix::zeros(dim, idx.len());
        for (k, &i) in idx.iter().enumerate() {
            m.set(i, k, BigInt::from(1));
        }
        Self::span(&m)
    }

    /// Caller guarantees the columns already generate a saturated lattice.
    pub(crate) fn from_saturated_columns(columns: &IntMatrix) -> Self {
        Subgroup {
            dim: columns.rows(),
            basis: hnf(columns),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    /// Whether `v` lies in the rational span (equivalently, in this saturated lattice).
    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        let col =
            IntMatrix::from_columns(self.dim, &[v.to_vec()]).expect("vector length equals dim");
        self.basis.hstack(&col).rank() == self.rank()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subgroup) -> bool {
        self.basis.hstack(&other.basis).rank() == self.rank()
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        if self.contains(other) {
            return self.clone();
        }
        if other.contains(self) {
            return other.clone();
        }
        Subgroup::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        if self.contains(other) {
            return other.clone();
        }
        if other.contains(self) {
            return self.clone();
        }
        // V = ker(Kv), W = ker(Kw)  =>  V ∩ W = ker([Kv; Kw])
        let kv = self.orthogonal_rows();
        let kw = other.orthogonal_rows();
        kernel_basis(&kv.vstack(&kw))
    }

    /// Rows spanning the integer orthogonal complement; `ker` of it is `self`.
    fn orthogonal_rows(&self) -> IntMatrix {
        if self.is_trivial() {
            return IntMatrix::identity(self.dim);
        }
        kernel_basis(&self.basis.transpose()).basis.transpose()
    }

    /// Image of the basis under `phi`.
    pub fn image(&self, phi: &IntMatrix) -> IntMatrix {
        phi.mul(&self.basis)
    }
}

/// `rank(phi(H))` over the rationals.
pub fn image_rank(phi: &IntMatrix, h: &Subgroup) -> usize {
    assert_eq!(
        phi.cols(),
        h.ambient_dim(),
        "map does not act on the subgroup's ambient space"
    );
    if h.is_trivial() {
        return 0;
    }
    h.image(phi).rank()
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.rank().cmp(&other.rank()))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (i, x) in g.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ">")
    }
}
