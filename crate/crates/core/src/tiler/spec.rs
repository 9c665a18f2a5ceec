use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::intlinalg::IntMatrix;
use crate::{Error, Rational, Result};

/// Independent elements sharing one scaling exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileGroup {
    pub elements: Vec<Vec<BigInt>>,
    pub scaling: Rational,
}

impl TileGroup {
    pub fn new(elements: Vec<Vec<BigInt>>, scaling: Rational) -> Self {
        TileGroup { elements, scaling }
    }

    pub fn from_i64(elements: &[&[i64]], scaling: Rational) -> Self {
        let elements = elements
            .iter()
            .map(|e| e.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        TileGroup { elements, scaling }
    }
}

/// Data of a product parallelepiped: groups of jointly independent elements
/// with positive, non-increasing scalings, and the memory parameter `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSpec {
    dim: usize,
    groups: Vec<TileGroup>,
    memory: u64,
}

/// `floor(m^k)` for a positive rational `k = p/q`, in exact integer arithmetic.
pub fn floor_power(m: u64, k: &Rational) -> Result<BigUint> {
    if !k.is_positive() {
        return Err(Error::InvalidTileSpec(
            "scaling exponents must be positive".into(),
        ));
    }
    let p = k
        .numer()
        .to_u32()
        .ok_or_else(|| Error::InvalidTileSpec("scaling numerator too large".into()))?;
    let q = k
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidTileSpec("scaling denominator too large".into()))?;
    Ok(BigUint::from(m).pow(p).nth_root(q))
}

impl TileSpec {
    pub fn new(dim: usize, groups: Vec<TileGroup>, memory: u64) -> Result<Self> {
        if memory == 0 {
            return Err(Error::InvalidTileSpec(
                "memory parameter must be at least 1".into(),
            ));
        }
        let mut columns = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            if g.elements.is_empty() {
                return Err(Error::InvalidTileSpec(alloc::format!(
                    "group {i} has no elements"
                )));
            }
            if !g.scaling.is_positive() {
                return Err(Error::InvalidTileSpec(
                    "scaling exponents must be positive".into(),
                ));
            }
            if i > 0 && g.scaling > groups[i - 1].scaling {
                return Err(Error::InvalidTileSpec(
                    "scalings must be non-increasing".into(),
                ));
            }
            for e in &g.elements {
                if e.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: e.len(),
                    });
                }
                columns.push(e.clone());
            }
        }
        let e = IntMatrix::from_columns(dim, &columns)?;
        if e.rank() != columns.len() {
            return Err(Error::DependentElements);
        }
        Ok(TileSpec {
            dim,
            groups,
            memory,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn groups(&self) -> &[TileGroup] {
        &self.groups
    }

    pub fn memory(&self) -> u64 {
        self.memory
    }

    /// Same elements and scalings with a different memory parameter.
    pub fn with_memory(&self, memory: u64) -> Result<Self> {
        TileSpec::new(self.dim, self.groups.clone(), memory)
    }

    /// All elements, in group order.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        self.groups
            .iter()
            .flat_map(|g| g.elements.iter().cloned())
            .collect()
    }

    /// `d x m` matrix whose columns are the elements.
    pub fn element_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.elements()).expect("validated on construction")
    }

    /// Scaling exponent of every element, in element order.
    pub fn element_scalings(&self) -> Vec<Rational> {
        self.groups
            .iter()
            .flat_map(|g| g.elements.iter().map(|_| g.scaling.clone()))
            .collect()
    }

    /// `floor(M^{k})` for each group.
    pub fn group_sides(&self) -> Vec<BigUint> {
        self.groups
            .iter()
            .map(|g| floor_power(self.memory, &g.scaling).expect("validated on construction"))
            .collect()
    }

    /// Number of coefficient values along each element.
    pub fn element_sides(&self) -> Vec<BigUint> {
        self.groups
            .iter()
            .zip(self.group_sides())
            .flat_map(|(g, s)| core::iter::repeat_n(s, g.elements.len()))
            .collect()
    }

    /// `|S| = prod_i floor(M^{k_i})^{h_i}` (elements are independent).
    pub fn point_count(&self) -> BigUint {
        self.element_sides().iter().product()
    }
}

/// Streams the points of a tile, lexicographic in the coefficients.
#[derive(Debug, Clone)]
pub struct TilePoints {
    elements: Vec<Vec<i64>>,
    sides: Vec<u64>,
    coeffs: Vec<u64>,
    current: Vec<i64>,
    done: bool,
}

impl Iterator for TilePoints {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // odometer increment
        let mut j = 0;
        loop {
            if j == self.coeffs.len() {
                self.done = true;
                break;
            }
            if self.coeffs[j] + 1 < self.sides[j] {
                self.coeffs[j] += 1;
                for (c, e) in self.current.iter_mut().zip(&self.elements[j]) {
                    *c += e;
                }
                break;
            }
            let back = self.coeffs[j] as i64;
            for (c, e) in self.current.iter_mut().zip(&self.elements[j]) {
                *c -= back * e;
            }
            self.coeffs[j] = 0;
            j += 1;
        }
        Some(out)
    }
}

/// Enumerates the tile, refusing if it has more than `budget` points.
pub fn enumerate_tile(spec: &TileSpec, budget: u64) -> Result<TilePoints> {
    let count = spec.point_count();
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: count.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    let sides: Vec<u64> = spec
        .element_sides()
        .iter()
        .map(|s| s.to_u64().expect("bounded by budget"))
        .collect();
    let elements: Vec<Vec<i64>> = spec
        .elements()
        .iter()
        .map(|e| {
            e.iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // every coordinate is bounded by sum_j |e_j| * (side_j - 1)
    for i in 0..spec.dim() {
        let mut bound = BigInt::zero();
        for (e, s) in elements.iter().zip(&sides) {
            bound += BigInt::from(e[i]).abs() * BigInt::from(*s);
        }
        if bound > BigInt::from(i64::MAX) {
            return Err(Error::Overflow);
        }
    }
    let n = sides.len();
    Ok(TilePoints {
        elements,
        sides,
        coeffs: alloc::vec![0; n],
        current: alloc::vec![0; spec.dim()],
        done: false,
    })
}

impl TileSpec {
    /// Exact exponent of `M` in `|S|`: `sum_i k_i h_i`.
    pub fn size_exponent(&self) -> Rational {
        self.groups
            .iter()
            .map(|g| &g.scaling * Rational::from_integer(g.elements.len().into()))
            .sum()
    }
}
