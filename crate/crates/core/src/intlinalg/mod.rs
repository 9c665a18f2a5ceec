//! Exact integer matrices and subgroups of `Z^d`.
//!
//! Everything here works over arbitrary-precision integers. A [`Subgroup`] is
//! always stored saturated (its basis generates `span_Q ∩ Z^d`) and in column
//! Hermite normal form, so two subgroups with the same rational span compare
//! equal bit for bit.

mod hnf;
mod matrix;
mod snf;
mod subgroup;

pub use hnf::{hnf, hnf_with_transform};
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, snf, SnfResult};
pub use subgroup::{image_rank, Subgroup};
