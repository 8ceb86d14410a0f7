//! Exact computations around Berglund–Hübsch–Henningson–Takahashi duality:
//! invertible polynomials, their diagonal symmetry groups, Burnside rings,
//! equivariant Saito duality and orbifold Euler characteristics.

pub mod abgrp;
pub mod burnside;
pub mod cli;
pub mod duality;
pub mod error;
pub mod lattice;
pub mod pc;
pub mod perm;
pub mod poly;
pub mod theorems;

pub use error::{Error, Result};
