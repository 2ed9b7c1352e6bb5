//! The covering identity: the sets relint F + N(P,F) partition R^d. Scanning
//! them yields the metric projection onto P and the piecewise reflection map,
//! whose degree at regular points recovers (-1)^d phi_P.

use crate::exactmath::RVector;
use crate::polyhedron::FaceId;
use crate::Error;

use super::{sign_of_dim, PhiEvaluator};

/// The unique decomposition y = x + u with x in relint F, u in N(P,F).
#[derive(Clone, Debug)]
pub struct CoveringWitness {
    pub face: FaceId,
    pub x: RVector,
    pub u: RVector,
}

impl PhiEvaluator {
    /// Scans all faces for y in relint F + N(P,F) and asserts exactly one
    /// matches. A zero or double match would falsify the covering identity.
    pub fn covering_witness(&self, y: &RVector) -> Result<CoveringWitness, Error> {
        let mut found: Option<CoveringWitness> = None;
        let mut matches = 0;
        for (id, _) in self.lattice().iter() {
            if let Some(x) = self.relint_plus_cone_witness(id, y) {
                matches += 1;
                if found.is_none() {
                    let u = y - &x;
                    found = Some(CoveringWitness { face: id, x, u });
                }
            }
        }
        match (matches, found) {
            (1, Some(w)) => Ok(w),
            _ => Err(Error::CoverViolation {
                point: format!("{y:?}"),
                matches,
            }),
        }
    }

    /// Witness x with x in relint F and y - x in N(P,F), if any: the face
    /// point of y = x + u with u pointing into the normal cone.
    fn relint_plus_cone_witness(&self, id: FaceId, y: &RVector) -> Option<RVector> {
        self.shifted_face_point(self.face(id), self.normal_cone_of(id), y, false, false)
    }

    /// Exact Euclidean nearest point of P to y, certified through the
    /// covering decomposition.
    pub fn project_onto(&self, y: &RVector) -> Result<RVector, Error> {
        let w = self.covering_witness(y)?;
        debug_assert!(self.polyhedron().contains(&w.x));
        debug_assert!(self.normal_cone_of(w.face).contains(&w.u));
        Ok(w.x)
    }

    /// The piecewise-linear reflection: x + u maps to x - u.
    pub fn psi(&self, y: &RVector) -> Result<RVector, Error> {
        let w = self.covering_witness(y)?;
        Ok(&w.x - &w.u)
    }

    /// Topological degree of the reflection map at z, or `None` when z is
    /// non-regular (it lies on some cell boundary). For regular z the value
    /// is checked against (-1)^d phi_P(z) before being returned.
    pub fn degree_at(&self, z: &RVector) -> Option<i64> {
        let d = self.polyhedron().ambient_dim();
        let mut degree: i64 = 0;
        for (id, f) in self.lattice().iter() {
            let member = self.cell_contains(id, z);
            if !member {
                continue;
            }
            if !self.open_cell_contains(id, z) {
                return None;
            }
            degree += sign_of_dim(d) * sign_of_dim(f.dim);
        }
        let phi = self.phi_at(z).phi;
        assert_eq!(
            degree,
            sign_of_dim(d) * phi,
            "degree mismatch at {z:?} (phi = {phi})"
        );
        Some(degree)
    }
}
