//! Communication lower bounds and optimal tilings for dependency-free loop nests.
//!
//! A loop nest over `Z^d` whose arrays are accessed through integer linear maps
//! `phi_i: Z^d -> Z^{d_i}` is described by an [`HblProblem`]. From it this crate
//!
//! * builds a finite list of subgroups whose rank constraints define the
//!   Hölder-Brascamp-Lieb exponent polytope ([`constraints`]),
//! * solves the primal and dual linear programs exactly over the rationals ([`lp`]),
//! * moves a dual optimum onto a chain of nested subgroups ([`flagify`]),
//! * turns that chain into a parallelepiped tile together with the translations
//!   that tile `Z^d` ([`tiler`]),
//! * and certifies the result by brute force ([`verifier`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constraints;
mod error;
pub mod flagify;
mod float;
pub mod intlinalg;
pub mod lp;
mod problem;
pub mod tiler;
pub mod verifier;

pub use error::{Error, Result};
pub use problem::{HblProblem, LinearMap};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Largest point or coset count enumerated without an explicit budget.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Exact rational used for every LP quantity.
pub type Rational = BigRational;
