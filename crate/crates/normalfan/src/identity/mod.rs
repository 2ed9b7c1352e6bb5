//! Evaluation of `phi_P = sum_F (-1)^{dim F} 1_{F - N(P,F)}` at arbitrary
//! rational points, together with every identity feeding into it: the Euler
//! relation for cones, the covering identity, the boundary strata, the
//! interval split, and the localization to lower-dimensional cones.

mod covering;
mod localize;
mod strata;
mod verify;

pub use covering::CoveringWitness;
pub use localize::LocalCone;
pub use strata::Stratum;
pub use verify::{VerifyConfig, VerifyReport, Violation};

use num_traits::Zero;

use crate::exactmath::{Rat, RVector};
use crate::lp::{self, LpStatus};
use crate::polyhedron::{
    enumerate_faces, normal_cone, CellSystem, Face, FaceId, FaceLattice, HPolyhedron,
    LinealityDecomposition, VCone,
};
use crate::Error;

/// Term-by-term evaluation of phi_P at one point.
#[derive(Clone, Debug)]
pub struct PhiReport {
    pub point: RVector,
    /// (face id, dim F, membership of the point in F - N(P,F))
    pub terms: Vec<(FaceId, usize, bool)>,
    pub phi: i64,
}

/// A polyhedron with its face lattice, normal cones, and Minkowski-cell
/// systems computed once up front. All evaluation goes through this.
pub struct PhiEvaluator {
    p: HPolyhedron,
    lattice: FaceLattice,
    cones: Vec<VCone>,
    cells: Vec<CellSystem>,
    decomposition: LinealityDecomposition,
}

impl PhiEvaluator {
    pub fn new(p: HPolyhedron) -> Self {
        let lattice = enumerate_faces(&p);
        let cones = lattice
            .faces()
            .iter()
            .map(|f| normal_cone(&p, f))
            .collect();
        let cells = lattice
            .faces()
            .iter()
            .map(|f| CellSystem::build(&p, f))
            .collect();
        let decomposition = p.decompose();
        Self {
            p,
            lattice,
            cones,
            cells,
            decomposition,
        }
    }

    pub fn polyhedron(&self) -> &HPolyhedron {
        &self.p
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn face(&self, id: FaceId) -> &Face {
        self.lattice.face(id)
    }

    pub fn normal_cone_of(&self, id: FaceId) -> &VCone {
        &self.cones[id]
    }

    pub fn cell(&self, id: FaceId) -> &CellSystem {
        &self.cells[id]
    }

    pub fn decomposition(&self) -> &LinealityDecomposition {
        &self.decomposition
    }

    pub fn predicted_phi(&self) -> i64 {
        self.decomposition.predicted_phi
    }

    /// Membership of x in the cell F - N(P,F), one exact feasibility LP.
    pub fn cell_contains(&self, id: FaceId, x: &RVector) -> bool {
        self.cells[id].contains(x)
    }

    /// The full signed indicator sum at x.
    pub fn phi_at(&self, x: &RVector) -> PhiReport {
        let mut terms = Vec::with_capacity(self.lattice.len());
        let mut phi: i64 = 0;
        for (id, f) in self.lattice.iter() {
            let member = self.cell_contains(id, x);
            if member {
                phi += sign_of_dim(f.dim);
            }
            terms.push((id, f.dim, member));
        }
        PhiReport {
            point: x.clone(),
            terms,
            phi,
        }
    }

    /// Membership of x in the open cell relint F - relint N(P,F).
    pub fn open_cell_contains(&self, id: FaceId, x: &RVector) -> bool {
        self.shifted_face_point(self.lattice.face(id), &self.cones[id], x, true, true)
            .is_some()
    }

    /// Witness f with f in relint(face) and f = x + s(U lambda + W mu) where
    /// s is +1 (`toward_cone`) or -1, lambda >= 0, and lambda strictly
    /// positive when `strict_cone`. One LP over (lambda, mu, t) with f
    /// substituted out; relint strictness rides on the shared slack t.
    pub(crate) fn shifted_face_point(
        &self,
        face: &Face,
        cone: &VCone,
        x: &RVector,
        toward_cone: bool,
        strict_cone: bool,
    ) -> Option<RVector> {
        let ng = cone.generators().len();
        let nl = cone.lineality().dim();
        let nvars = ng + nl + 1;
        let t_col = ng + nl;
        let one = Rat::from_integer(1.into());
        let mut s = lp::LinearSystem::new(nvars);
        for (i, r) in self.p.rows().iter().enumerate() {
            let mut row = Vec::with_capacity(nvars);
            for g in cone.generators() {
                let q = r.normal.dot(g);
                row.push(if toward_cone { q } else { -q });
            }
            for w in cone.lineality().vectors() {
                let q = r.normal.dot(w);
                row.push(if toward_cone { q } else { -q });
            }
            let rhs = &r.rhs - &r.normal.dot(x);
            if face.active.contains(&i) {
                row.push(Rat::zero());
                s.push_eq(RVector::new(row), rhs);
            } else {
                row.push(one.clone());
                s.push_ineq(RVector::new(row), rhs);
            }
        }
        for j in 0..ng {
            let mut row = vec![Rat::zero(); nvars];
            row[j] = -one.clone();
            if strict_cone {
                row[t_col] = one.clone();
            }
            s.push_ineq(RVector::new(row), Rat::zero());
        }
        s.push_ineq(RVector::unit(nvars, t_col), one.clone());
        let out = lp::optimize(&RVector::unit(nvars, t_col), &s);
        if out.status != LpStatus::Optimal || out.value.expect("capped slack") <= Rat::zero() {
            return None;
        }
        let w = out.witness.expect("optimal witness");
        let mut f = x.clone();
        for (j, g) in cone.generators().iter().enumerate() {
            let c = if toward_cone { w[j].clone() } else { -&w[j] };
            f = &f + &g.scale(&c);
        }
        for (k, v) in cone.lineality().vectors().iter().enumerate() {
            let c = if toward_cone {
                w[ng + k].clone()
            } else {
                -&w[ng + k]
            };
            f = &f + &v.scale(&c);
        }
        Some(f)
    }

    /// Euler relation input: sum of (-1)^{dim F} over the whole lattice.
    /// Errors unless P is a cone (0 in P and P equals its recession cone).
    pub fn euler_sum(&self) -> Result<i64, Error> {
        if !self.p.contains(&RVector::zero(self.p.ambient_dim())) {
            return Err(Error::NotACone);
        }
        for r in self.p.rows() {
            let out = lp::optimize(&r.normal, &self.p.system());
            let cone_bounded = out.status == LpStatus::Optimal
                && out.value.expect("optimal value") <= Rat::zero();
            if !cone_bounded {
                return Err(Error::NotACone);
            }
        }
        Ok(self
            .lattice
            .faces()
            .iter()
            .map(|f| sign_of_dim(f.dim))
            .sum())
    }
}

pub(crate) fn sign_of_dim(dim: usize) -> i64 {
    if dim % 2 == 0 {
        1
    } else {
        -1
    }
}
