//! Exact computations for quotients of del Pezzo surfaces.
//!
//! The crate is `no_std` with `alloc`. Everything is exact: integer matrices for
//! Picard lattices and Weyl groups, `Ratio<i64>` for intersection numbers on
//! singular surfaces, and big rationals for multiquadratic number fields.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod exactgeo;
pub mod lattice;
pub mod linalg;
pub mod mmp;
pub mod perm;
pub mod quotient;
pub mod weyl;

pub use error::Error;

/// Small exact rational used for intersection numbers.
pub type Q = num_rational::Ratio<i64>;
