//! Exact arbitrary-precision rational scalars, vectors, matrices and the
//! linear-algebra kernels everything else is built on. No floating point
//! anywhere; norm comparisons go through squared norms so no square roots
//! are ever needed.

mod matrix;
mod rational;
mod subspace;
mod vector;

pub use matrix::{project_affine, solve_affine, RMatrix};
pub use rational::{fmt_rat, parse_rat, rat, rat_int, Rat};
pub use subspace::SubspaceBasis;
pub use vector::RVector;
