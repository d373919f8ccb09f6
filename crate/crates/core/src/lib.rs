//! Exact computation of the Lie structure of finite-dimensional associative
//! algebras over prime fields.
//!
//! Everything here is pure and allocation-only: the crate builds without `std`.
//! File formats, the command-line driver and parallel corpus runs live in the
//! `ringlab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod audit;
pub mod budget;
pub mod error;
pub mod field;
pub mod lattice;
pub mod nilpotent;
pub mod spectrum;
pub mod subspace;

pub use algebra::{Algebra, AlgebraElement, Quotient, Unitization};
pub use budget::Budgets;
pub use error::Error;
pub use field::{FMatrix, FVector, PrimeField};
pub use lattice::{TowerKind, TowerRecord};
pub use subspace::Subspace;
