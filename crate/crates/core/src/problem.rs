use alloc::string::String;
use alloc::vec::Vec;

use crate::intlinalg::IntMatrix;
use crate::{Error, Result};

/// Integer matrix of one array subscript map `Z^d -> Z^{d_i}`; rows are output coordinates.
pub type LinearMap = IntMatrix;

/// A loop nest over `Z^dim` with one linear subscript map per array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HblProblem {
    dim: usize,
    maps: Vec<LinearMap>,
    names: Vec<String>,
}

impl HblProblem {
    pub fn new(dim: usize, maps: Vec<LinearMap>) -> Result<Self> {
        let names = (1..=maps.len()).map(|i| alloc::format!("phi{i}")).collect();
        Self::with_names(dim, maps, names)
    }

    pub fn with_names(dim: usize, maps: Vec<LinearMap>, names: Vec<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidProblem("dimension must be at least 1".into()));
        }
        if maps.is_empty() {
            return Err(Error::InvalidProblem("at least one map is required".into()));
        }
        if names.len() != maps.len() {
            return Err(Error::InvalidProblem("one name per map is required".into()));
        }
        for m in &maps {
            if m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.cols(),
                });
            }
        }
        Ok(HblProblem { dim, maps, names })
    }

    /// Convenience constructor from small integer row lists.
    pub fn from_rows(dim: usize, maps: &[&[&[i64]]]) -> Result<Self> {
        let maps = maps
            .iter()
            .map(|rows| IntMatrix::from_rows_i64(dim, rows))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, maps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_maps(&self) -> usize {
        self.maps.len()
    }
}
