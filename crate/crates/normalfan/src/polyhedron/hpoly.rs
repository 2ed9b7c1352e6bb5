use std::collections::BTreeSet;

use num_traits::Zero;

use crate::exactmath::{RMatrix, Rat, RVector, SubspaceBasis};
use crate::lp::{self, LinearSystem, LpStatus, Row};
use crate::Error;

/// Nonempty H-polyhedron {x : Ax <= b}. Equalities in input are expanded to
/// inequality pairs before construction, so inequality rows are the single
/// internal representation. The implicit-equality set, dimension and
/// lineality basis are computed eagerly and cached.
#[derive(Clone, Debug)]
pub struct HPolyhedron {
    dim: usize,
    rows: Vec<Row>,
    implicit: BTreeSet<usize>,
    poly_dim: usize,
    lineality: SubspaceBasis,
}

impl HPolyhedron {
    /// Builds and validates a polyhedron from inequality rows `<a_i,x> <= b_i`.
    pub fn new(dim: usize, rows: Vec<(RVector, Rat)>) -> Result<Self, Error> {
        let mut system = LinearSystem::new(dim);
        for (a, b) in &rows {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.dim(),
                });
            }
            system.push_ineq(a.clone(), b.clone());
        }
        let implicit = lp::implicit_equalities(&system).map_err(|_| Error::EmptyPolyhedron)?;
        let rows: Vec<Row> = rows.into_iter().map(|(a, b)| Row::new(a, b)).collect();
        let implicit_normals: Vec<RVector> = implicit
            .iter()
            .map(|&i| rows[i].normal.clone())
            .collect();
        let implicit_rank = if implicit_normals.is_empty() {
            0
        } else {
            RMatrix::from_rows(dim, implicit_normals).rank()
        };
        let all_normals: Vec<RVector> = rows
            .iter()
            .map(|r| r.normal.clone())
            .filter(|n| !n.is_zero())
            .collect();
        let lineality = if all_normals.is_empty() {
            SubspaceBasis::full(dim)
        } else {
            RMatrix::from_rows(dim, all_normals).kernel_basis()
        };
        Ok(Self {
            dim,
            rows,
            implicit,
            poly_dim: dim - implicit_rank,
            lineality,
        })
    }

    /// Matrix/vector form of `new`.
    pub fn from_matrix(a: &RMatrix, b: &RVector) -> Result<Self, Error> {
        if a.rows() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: b.dim(),
            });
        }
        Self::new(
            a.cols(),
            a.row_iter()
                .zip(b.iter())
                .map(|(r, v)| (r.clone(), v.clone()))
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of P as a set: d minus the rank of the implicit normals.
    pub fn poly_dim(&self) -> usize {
        self.poly_dim
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Indices of rows holding with equality on all of P.
    pub fn implicit(&self) -> &BTreeSet<usize> {
        &self.implicit
    }

    /// U_P = kernel of the constraint matrix.
    pub fn lineality_basis(&self) -> &SubspaceBasis {
        &self.lineality
    }

    /// The defining rows as a plain inequality system.
    pub fn system(&self) -> LinearSystem {
        let mut s = LinearSystem::new(self.dim);
        for r in &self.rows {
            s.push_ineq(r.normal.clone(), r.rhs.clone());
        }
        s
    }

    /// System of the face forced by making `active` rows tight.
    pub fn face_system(&self, active: &BTreeSet<usize>) -> LinearSystem {
        let mut s = self.system();
        for &i in active {
            let row = self.rows[i].clone();
            s.push_eq(row.normal, row.rhs);
        }
        s
    }

    pub fn contains(&self, x: &RVector) -> bool {
        self.rows.iter().all(|r| r.slack(x) >= Rat::zero())
    }

    /// Recession cone {x : Ax <= 0}.
    pub fn recession_cone(&self) -> HPolyhedron {
        HPolyhedron::new(
            self.dim,
            self.rows
                .iter()
                .map(|r| (r.normal.clone(), Rat::zero()))
                .collect(),
        )
        .expect("recession cone contains the origin")
    }

    /// Bounded iff the recession cone is {0}, decided by coordinate-wise LPs
    /// over the boxed recession cone.
    pub fn is_bounded(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let mut boxed = LinearSystem::new(self.dim);
        for r in &self.rows {
            boxed.push_ineq(r.normal.clone(), Rat::zero());
        }
        for k in 0..self.dim {
            boxed.push_ineq(RVector::unit(self.dim, k), Rat::from_integer(1.into()));
            boxed.push_ineq(-&RVector::unit(self.dim, k), Rat::from_integer(1.into()));
        }
        for k in 0..self.dim {
            for dir in [RVector::unit(self.dim, k), -&RVector::unit(self.dim, k)] {
                let out = lp::optimize(&dir, &boxed);
                debug_assert_eq!(out.status, LpStatus::Optimal);
                if out.value.expect("boxed cone LP is bounded") > Rat::zero() {
                    return false;
                }
            }
        }
        true
    }

    /// P0 = P intersected with the orthogonal complement of its lineality
    /// space, plus the constant value of phi_P this predicts.
    pub fn decompose(&self) -> LinealityDecomposition {
        let u = self.lineality.clone();
        let mut rows = self
            .rows
            .iter()
            .map(|r| (r.normal.clone(), r.rhs.clone()))
            .collect::<Vec<_>>();
        for v in u.vectors() {
            rows.push((v.clone(), Rat::zero()));
            rows.push((-v, Rat::zero()));
        }
        let p0 = HPolyhedron::new(self.dim, rows).expect("P0 is nonempty when P is");
        debug_assert_eq!(p0.lineality_basis().dim(), 0);
        let p0_bounded = p0.is_bounded();
        let predicted_phi = if p0_bounded {
            if u.dim() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        };
        LinealityDecomposition {
            u_basis: u,
            p0,
            p0_bounded,
            predicted_phi,
        }
    }
}

/// Orthogonal decomposition P = P0 + U_P with the constant value of phi_P it
/// predicts: (-1)^{dim U_P} when P0 is bounded, 0 otherwise.
#[derive(Clone, Debug)]
pub struct LinealityDecomposition {
    pub u_basis: SubspaceBasis,
    pub p0: HPolyhedron,
    pub p0_bounded: bool,
    pub predicted_phi: i64,
}
