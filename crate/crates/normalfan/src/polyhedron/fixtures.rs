//! Small worked instances used across tests and the CLI examples.

use crate::exactmath::{rat_int, RVector};
use crate::Error;

use super::hpoly::HPolyhedron;

fn build(dim: usize, rows: &[(&[i64], i64)]) -> Result<HPolyhedron, Error> {
    HPolyhedron::new(
        dim,
        rows.iter()
            .map(|(a, b)| (RVector::from_ints(a), rat_int(*b)))
            .collect(),
    )
}

/// [0,1]^2
pub fn unit_square() -> HPolyhedron {
    build(
        2,
        &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)],
    )
    .expect("unit square")
}

/// [0,1]^3
pub fn unit_cube() -> HPolyhedron {
    build(
        3,
        &[
            (&[1, 0, 0], 1),
            (&[0, 1, 0], 1),
            (&[0, 0, 1], 1),
            (&[-1, 0, 0], 0),
            (&[0, -1, 0], 0),
            (&[0, 0, -1], 0),
        ],
    )
    .expect("unit cube")
}

/// [0, inf)^2
pub fn quadrant() -> HPolyhedron {
    build(2, &[(&[-1, 0], 0), (&[0, -1], 0)]).expect("quadrant")
}

/// {x2 <= 0} in R^2
pub fn half_plane() -> HPolyhedron {
    build(2, &[(&[0, 1], 0)]).expect("half-plane")
}

/// {x2 = 0} in R^2, written as an inequality pair
pub fn line_x_axis() -> HPolyhedron {
    build(2, &[(&[0, 1], 0), (&[0, -1], 0)]).expect("line")
}

/// [0,1] in R^1
pub fn segment01() -> HPolyhedron {
    build(1, &[(&[1], 1), (&[-1], 0)]).expect("segment")
}

/// R^2 (no constraints)
pub fn whole_plane() -> HPolyhedron {
    build(2, &[]).expect("R^2")
}
