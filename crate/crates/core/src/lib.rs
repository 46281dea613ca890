//! Exact computations around K3 surfaces with M20 symmetry: number fields,
//! integral lattices, CM points, finite matrix groups, multivariate
//! polynomials with Gröbner bases, and conics in projective space.
//!
//! Everything is exact. Rationals are arbitrary precision and there is no
//! floating point anywhere in the crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

extern crate alloc;

pub mod cmpoints;
pub mod lattice;
pub mod linalg;
pub mod matgroup;
pub mod numberfield;
pub mod polyring;
pub mod projgeom;
pub mod rational;

pub use numberfield::{fields, Field, FieldElement};
pub use rational::Rat;
