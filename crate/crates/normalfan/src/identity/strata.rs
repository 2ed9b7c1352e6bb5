//! Boundary strata of the cell decomposition and the interval regrouping of
//! the signed indicator sum around a fixed point.

use std::collections::BTreeSet;

use crate::exactmath::RVector;
use crate::polyhedron::FaceId;
use crate::Error;

use super::{sign_of_dim, PhiEvaluator};

/// A face pair (G, H), G a proper subface of H, with the query point in
/// relint G - relint N(P,H).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Stratum {
    pub g: FaceId,
    pub h: FaceId,
}

impl PhiEvaluator {
    /// All strata of x: pairs (G, H) with G properly contained in H and
    /// x = g - v for some g in relint G and v in relint N(P,H). Each pair is
    /// decided by one strict-feasibility LP. Regular points have no strata.
    pub fn strata_at(&self, x: &RVector) -> Vec<Stratum> {
        self.lattice()
            .proper_pairs()
            .into_iter()
            .filter(|&(g, h)| self.stratum_contains(g, h, x))
            .map(|(g, h)| Stratum { g, h })
            .collect()
    }

    /// x in relint G - relint N(P,H)? Equivalently: some g in relint G has
    /// g = x + v with v in relint N(P,H).
    pub fn stratum_contains(&self, g: FaceId, h: FaceId, x: &RVector) -> bool {
        self.shifted_face_point(self.face(g), self.normal_cone_of(h), x, true, true)
            .is_some()
    }

    /// Partial signed indicator sum over the interval I(G,H) at y.
    pub fn interval_phi(&self, g: FaceId, h: FaceId, y: &RVector) -> Result<i64, Error> {
        let mut sum = 0;
        for f in self.lattice().interval(g, h)? {
            if self.cell_contains(f, y) {
                sum += sign_of_dim(self.face(f).dim);
            }
        }
        Ok(sum)
    }

    /// Pairwise disjointness of the intervals of all strata of x.
    pub fn check_interval_disjoint(&self, x: &RVector) -> bool {
        let strata = self.strata_at(x);
        let intervals: Vec<BTreeSet<FaceId>> = strata
            .iter()
            .map(|s| {
                self.lattice()
                    .interval(s.g, s.h)
                    .expect("stratum faces are comparable")
                    .into_iter()
                    .collect()
            })
            .collect();
        for (i, a) in intervals.iter().enumerate() {
            for b in intervals.iter().skip(i + 1) {
                if !a.is_disjoint(b) {
                    return false;
                }
            }
        }
        true
    }

    /// The regrouped evaluation: phi at y equals the interval sums over the
    /// strata of x plus the plain sum over the remaining faces.
    pub fn split_identity_check(&self, x: &RVector, y: &RVector) -> bool {
        let strata = self.strata_at(x);
        let mut covered: BTreeSet<FaceId> = BTreeSet::new();
        let mut rhs = 0;
        for s in &strata {
            rhs += self
                .interval_phi(s.g, s.h, y)
                .expect("stratum faces are comparable");
            covered.extend(
                self.lattice()
                    .interval(s.g, s.h)
                    .expect("stratum faces are comparable"),
            );
        }
        for (id, f) in self.lattice().iter() {
            if !covered.contains(&id) && self.cell_contains(id, y) {
                rhs += sign_of_dim(f.dim);
            }
        }
        self.phi_at(y).phi == rhs
    }
}
