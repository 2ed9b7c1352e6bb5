//! Exact-arithmetic polyhedral geometry: H-polyhedra, face lattices, normal
//! fans, lineality decompositions, and evaluation of the signed indicator sum
//! `phi_P = sum_F (-1)^{dim F} 1_{F - N(P,F)}` at arbitrary rational points,
//! including points on cell boundaries.
//!
//! Everything is computed over arbitrary-precision rationals; every geometric
//! predicate is decided by an exact simplex solver, so there are no tolerances
//! and no floating point anywhere.

pub mod cli;
pub mod exactmath;
pub mod harness;
pub mod identity;
pub mod json;
pub mod lp;
pub mod polyhedron;

mod error;

pub use error::Error;
