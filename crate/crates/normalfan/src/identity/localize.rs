//! Localization of the identity around a face: factoring out G near a point
//! of its relative interior reduces every cell question on the interval
//! I(G,H) to a pointed cone H* of dimension dim H - dim G.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exactmath::{RMatrix, Rat, RVector, SubspaceBasis};
use crate::polyhedron::{canonical_face, FaceId, HPolyhedron};
use crate::Error;

use super::{sign_of_dim, PhiEvaluator};

/// The cone H* obtained by localizing at x1 in relint G and factoring out
/// the directions of G, together with the face correspondence F -> F*.
///
/// H* is kept in ambient coordinates: it is the set of w in
/// L3 = L(H) ∩ L(G)^⊥ with <a_j, w> <= 0 for the rows tight at G but not at
/// H, pinned to L3 by equality rows. For w in L3 every membership and sign
/// computed on the ambient polyhedron agrees with the intrinsic one, because
/// ambient normal cones differ from intrinsic ones exactly by the summand
/// L3^⊥, which meets L3 only in 0.
#[derive(Clone, Debug)]
pub struct LocalCone {
    pub base_point: RVector,
    pub l3: SubspaceBasis,
    pub hstar: HPolyhedron,
    /// (F in I(G,H), canonical active set of F* inside hstar)
    pub face_map: Vec<(FaceId, BTreeSet<usize>)>,
}

impl PhiEvaluator {
    /// Builds the localization of the interval I(G,H) at G's relint witness.
    pub fn localize(&self, g: FaceId, h: FaceId) -> Result<LocalCone, Error> {
        let interval = self.lattice().interval(g, h)?;
        let p = self.polyhedron();
        let d = p.ambient_dim();
        let gf = self.face(g);
        let hf = self.face(h);
        let x1 = gf.relint_witness.clone();

        let span_of = |active: &BTreeSet<usize>| -> SubspaceBasis {
            let normals: Vec<RVector> = active
                .iter()
                .map(|&i| p.rows()[i].normal.clone())
                .filter(|n| !n.is_zero())
                .collect();
            if normals.is_empty() {
                SubspaceBasis::empty(d)
            } else {
                RMatrix::from_rows(d, normals).kernel_basis().orth_complement()
            }
        };
        // L(F) = kernel of the active normals; L3 = L(H) ∩ L(G)^⊥
        let lg_perp = span_of(&gf.active);
        let lh = span_of(&hf.active).orth_complement();
        let l3 = lh.intersect(&lg_perp);

        // rows tight at G but not at H, in ascending index order
        let j_h: Vec<usize> = gf.active.difference(&hf.active).copied().collect();
        let mut rows: Vec<(RVector, Rat)> = j_h
            .iter()
            .map(|&j| (p.rows()[j].normal.clone(), Rat::zero()))
            .collect();
        let mut pin_rows: BTreeSet<usize> = BTreeSet::new();
        for c in l3.orth_complement().vectors() {
            pin_rows.insert(rows.len());
            rows.push((c.clone(), Rat::zero()));
            pin_rows.insert(rows.len());
            rows.push((-c, Rat::zero()));
        }
        let hstar = HPolyhedron::new(d, rows).expect("localized cone contains 0");

        let mut face_map = Vec::with_capacity(interval.len());
        for f in interval {
            let ff = self.face(f);
            // rows of J_H tight on F* are exactly those tight on F
            let mut tight = pin_rows.clone();
            for (r, &j) in j_h.iter().enumerate() {
                if ff.active.contains(&j) {
                    tight.insert(r);
                }
            }
            let fstar = canonical_face(&hstar, &tight)
                .expect("interval faces localize to nonempty faces");
            assert_eq!(
                fstar.dim,
                ff.dim - gf.dim,
                "localized face dimension must drop by dim G"
            );
            face_map.push((f, fstar.active));
        }
        Ok(LocalCone {
            base_point: x1,
            l3,
            hstar,
            face_map,
        })
    }

    /// A radius around which the localization is expected to be faithful:
    /// half the smallest slack of the rows strict at G's witness, scaled by
    /// the row's 1-norm so that it bounds coordinate displacements.
    pub fn safe_radius(&self, g: FaceId) -> Rat {
        let gf = self.face(g);
        let mut best: Option<Rat> = None;
        for (i, r) in self.polyhedron().rows().iter().enumerate() {
            if gf.active.contains(&i) || r.normal.is_zero() {
                continue;
            }
            let norm1: Rat = r.normal.iter().map(|c| c.abs()).sum();
            let bound = r.slack(&gf.relint_witness) / norm1;
            if best.as_ref().is_none_or(|b| bound < *b) {
                best = Some(bound);
            }
        }
        best.map(|b| b / Rat::from_integer(2.into()))
            .unwrap_or_else(|| Rat::from_integer(1.into()))
    }

    /// The localized-equivalence check: for every F in I(G,H), membership of
    /// x + w in the cell of F equals membership of w in the localized cell of
    /// F*, and the interval sum at x + w equals (-1)^{dim G} phi_{H*}(w).
    pub fn lemma2_check(
        &self,
        g: FaceId,
        h: FaceId,
        x: &RVector,
        w: &RVector,
        eps: &Rat,
    ) -> Result<bool, Error> {
        if !self.stratum_contains(g, h, x) {
            return Err(Error::StratumMismatch(format!(
                "({g},{h}) is not a stratum of the given point"
            )));
        }
        let local = self.localize(g, h)?;
        if !local.l3.contains(w) {
            return Err(Error::StratumMismatch(
                "displacement is not in the localization subspace".into(),
            ));
        }
        if w.norm_sq() > eps * eps {
            return Err(Error::StratumMismatch(
                "displacement exceeds the given radius".into(),
            ));
        }
        let loc_eval = PhiEvaluator::new(local.hstar.clone());
        let y = x + w;
        for (f, star_active) in &local.face_map {
            let star_id = loc_eval
                .lattice()
                .id_of_active(star_active)
                .expect("localized face is in the localized lattice");
            if self.cell_contains(*f, &y) != loc_eval.cell_contains(star_id, w) {
                return Ok(false);
            }
        }
        let lhs = self.interval_phi(g, h, &y)?;
        let rhs = sign_of_dim(self.face(g).dim) * loc_eval.phi_at(w).phi;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};
    use crate::polyhedron::fixtures;

    fn face_by_witness(e: &PhiEvaluator, dim: usize, w: &[i64]) -> FaceId {
        let target = RVector::from_ints(w);
        e.lattice()
            .iter()
            .find(|(_, f)| f.dim == dim && f.relint_witness == target)
            .map(|(id, _)| id)
            .unwrap()
    }

    #[test]
    fn localize_square_vertex_to_bottom_edge() {
        let e = PhiEvaluator::new(fixtures::unit_square());
        let v00 = face_by_witness(&e, 0, &[0, 0]);
        let bottom = e
            .lattice()
            .iter()
            .find(|(_, f)| f.dim == 1 && f.relint_witness[1].is_zero())
            .unwrap()
            .0;
        let local = e.localize(v00, bottom).unwrap();
        // L3 is the x1-axis; H* is the ray pos{(1,0)}
        assert_eq!(local.l3.dim(), 1);
        assert!(local.l3.contains(&RVector::from_ints(&[1, 0])));
        assert!(local.hstar.contains(&RVector::from_ints(&[2, 0])));
        assert!(!local.hstar.contains(&RVector::from_ints(&[-1, 0])));
        assert!(!local.hstar.contains(&RVector::from_ints(&[1, 1])));
        assert_eq!(local.face_map.len(), 2);
    }

    #[test]
    fn localize_cone_at_apex_is_the_cone() {
        let e = PhiEvaluator::new(fixtures::quadrant());
        let apex = e.lattice().iter().find(|(_, f)| f.dim == 0).unwrap().0;
        let local = e.localize(apex, e.lattice().whole_id()).unwrap();
        assert_eq!(local.l3.dim(), 2);
        for pt in [[3, 5], [0, 0], [1, 0]] {
            assert!(local.hstar.contains(&RVector::from_ints(&pt)));
        }
        assert!(!local.hstar.contains(&RVector::from_ints(&[-1, 1])));
    }

    #[test]
    fn localize_cube_vertex_to_facet() {
        let e = PhiEvaluator::new(fixtures::unit_cube());
        let v = face_by_witness(&e, 0, &[0, 0, 0]);
        let facet = e
            .lattice()
            .iter()
            .find(|(_, f)| f.dim == 2 && f.relint_witness[2].is_zero())
            .unwrap()
            .0;
        let local = e.localize(v, facet).unwrap();
        // H* is a 2-dimensional quadrant inside {x3 = 0}
        assert_eq!(local.l3.dim(), 2);
        assert_eq!(local.hstar.poly_dim(), 2);
        assert!(local.hstar.contains(&RVector::from_ints(&[1, 1, 0])));
        assert!(!local.hstar.contains(&RVector::from_ints(&[-1, 1, 0])));
        assert!(!local.hstar.contains(&RVector::from_ints(&[1, 1, 1])));
        assert_eq!(local.face_map.len(), 4);
    }

    #[test]
    fn safe_radius_square_vertex() {
        let e = PhiEvaluator::new(fixtures::unit_square());
        let v00 = face_by_witness(&e, 0, &[0, 0]);
        assert_eq!(e.safe_radius(v00), rat(1, 2));
    }

    #[test]
    fn lemma2_square_stratum() {
        let e = PhiEvaluator::new(fixtures::unit_square());
        let x = RVector::from_ints(&[2, 0]);
        let s = e.strata_at(&x)[0];
        let eps = e.safe_radius(s.g);
        for w in [
            RVector::new(vec![rat_int(0), rat(1, 4)]),
            RVector::new(vec![rat_int(0), rat(-1, 4)]),
            RVector::zero(2),
        ] {
            assert!(e.lemma2_check(s.g, s.h, &x, &w, &eps).unwrap());
        }
        // displacement outside L3 is rejected
        assert!(matches!(
            e.lemma2_check(s.g, s.h, &x, &RVector::new(vec![rat(1, 4), rat_int(0)]), &eps),
            Err(Error::StratumMismatch(_))
        ));
        // non-stratum pair is rejected
        let whole = e.lattice().whole_id();
        assert!(matches!(
            e.lemma2_check(s.g, whole, &x, &RVector::zero(2), &eps),
            Err(Error::StratumMismatch(_))
        ));
    }
}
