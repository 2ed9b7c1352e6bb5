//! Polyhedral sets, face lattices, normal cones, and the lineality
//! decomposition P = P0 + U_P with its predicted constant.

mod cone;
mod faces;
pub mod fixtures;
mod hpoly;

pub use cone::{face_of, normal_cone, CellSystem, VCone};
pub use faces::{canonical_face, enumerate_faces, Face, FaceId, FaceLattice};
pub use hpoly::{HPolyhedron, LinealityDecomposition};

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use num_traits::Zero;

    use super::*;
    use crate::exactmath::{rat_int, Rat, RVector, SubspaceBasis};
    use crate::lp::{self, LpStatus};

    #[test]
    fn make_polyhedron_validates() {
        assert_eq!(fixtures::unit_square().poly_dim(), 2);
        // {x <= -1, -x <= 0} is empty
        let empty = HPolyhedron::new(
            1,
            vec![
                (RVector::from_ints(&[1]), rat_int(-1)),
                (RVector::from_ints(&[-1]), rat_int(0)),
            ],
        );
        assert!(matches!(empty, Err(crate::Error::EmptyPolyhedron)));
        // a line in R^2 has dim 1 and lineality dim 1
        let line = fixtures::line_x_axis();
        assert_eq!(line.poly_dim(), 1);
        assert_eq!(line.lineality_basis().dim(), 1);
    }

    #[test]
    fn lineality_recession_bounded() {
        let sq = fixtures::unit_square();
        assert_eq!(sq.lineality_basis().dim(), 0);
        assert!(sq.is_bounded());

        let hp = fixtures::half_plane();
        assert_eq!(hp.lineality_basis().dim(), 1);
        assert!(hp
            .lineality_basis()
            .contains(&RVector::from_ints(&[1, 0])));
        assert!(!hp.is_bounded());

        let q = fixtures::quadrant();
        assert_eq!(q.lineality_basis().dim(), 0);
        assert!(!q.is_bounded());
        // recession cone of a cone is the cone itself
        let rec = q.recession_cone();
        assert!(rec.contains(&RVector::from_ints(&[3, 5])));
        assert!(!rec.contains(&RVector::from_ints(&[-1, 0])));
    }

    #[test]
    fn decompose_examples() {
        // half-plane: U_P = x1-axis, P0 = downward ray, unbounded -> 0
        let d = fixtures::half_plane().decompose();
        assert_eq!(d.u_basis.dim(), 1);
        assert!(!d.p0_bounded);
        assert_eq!(d.predicted_phi, 0);
        assert_eq!(d.p0.lineality_basis().dim(), 0);

        // R^2: P0 = {0}, predicted (-1)^2 = 1
        let d = fixtures::whole_plane().decompose();
        assert_eq!(d.u_basis.dim(), 2);
        assert!(d.p0_bounded);
        assert_eq!(d.predicted_phi, 1);

        // line: dim U_P = 1, P0 = {0} -> -1
        let d = fixtures::line_x_axis().decompose();
        assert_eq!(d.u_basis.dim(), 1);
        assert!(d.p0_bounded);
        assert_eq!(d.predicted_phi, -1);
    }

    #[test]
    fn normal_cone_examples() {
        let sq = fixtures::unit_square();
        let l = enumerate_faces(&sq);
        // vertex (0,0): pos{(-1,0),(0,-1)}
        let v00 = l
            .iter()
            .find(|(_, f)| f.dim == 0 && f.relint_witness == RVector::from_ints(&[0, 0]))
            .unwrap();
        let n = normal_cone(&sq, v00.1);
        assert_eq!(n.generators().len(), 2);
        assert_eq!(n.lineality().dim(), 0);
        assert!(n.contains(&RVector::from_ints(&[-1, -1])));
        assert!(!n.contains(&RVector::from_ints(&[1, 0])));

        // F = P for a full-dimensional polytope: N(P,P) = {0}
        let whole = l.face(l.whole_id());
        let n = normal_cone(&sq, whole);
        assert!(n.generators().is_empty());
        assert_eq!(n.lineality().dim(), 0);

        // line {x2=0}: N(P,P) = L(P)^perp = span{(0,1)}
        let line = fixtures::line_x_axis();
        let ll = enumerate_faces(&line);
        let n = normal_cone(&line, ll.face(ll.whole_id()));
        assert!(n.generators().is_empty());
        assert_eq!(n.lineality().dim(), 1);
        assert!(n.lineality().contains(&RVector::from_ints(&[0, 1])));
    }

    #[test]
    fn normal_cone_inequality_certificate() {
        // every generator u satisfies <u, z - x> <= 0 for z in P, x in relint F
        let sq = fixtures::unit_square();
        let l = enumerate_faces(&sq);
        for (_, f) in l.iter() {
            let n = normal_cone(&sq, f);
            for u in n.generators() {
                let out = lp::optimize(u, &sq.system());
                assert_eq!(out.status, LpStatus::Optimal);
                assert!(out.value.unwrap() <= u.dot(&f.relint_witness));
            }
        }
    }

    #[test]
    fn complementarity_of_face_and_normal_cone() {
        let cube = fixtures::unit_cube();
        let l = enumerate_faces(&cube);
        for (_, f) in l.iter() {
            let n = normal_cone(&cube, f);
            let span_n = n.span();
            // L(F) = kernel of the active normals
            let lf = if f.active.is_empty() {
                SubspaceBasis::full(3)
            } else {
                crate::exactmath::RMatrix::from_rows(
                    3,
                    f.active
                        .iter()
                        .map(|&i| cube.rows()[i].normal.clone())
                        .collect(),
                )
                .kernel_basis()
            };
            for u in span_n.vectors() {
                for v in lf.vectors() {
                    assert_eq!(u.dot(v), Rat::zero());
                }
            }
            assert_eq!(span_n.dim() + lf.dim(), 3);
        }
    }

    #[test]
    fn polar_cone_examples() {
        // C = pos{(1,0),(0,1)} -> polar {y <= 0 componentwise}
        let c = VCone::new(
            2,
            vec![RVector::from_ints(&[1, 0]), RVector::from_ints(&[0, 1])],
            SubspaceBasis::empty(2),
        );
        let p = c.polar();
        assert!(p.contains(&RVector::from_ints(&[-2, -3])));
        assert!(!p.contains(&RVector::from_ints(&[1, -1])));
        assert!(!c.is_subspace());

        // C = R^2 -> polar {0}
        let c = VCone::new(
            2,
            vec![],
            SubspaceBasis::full(2),
        );
        let p = c.polar();
        assert_eq!(p.poly_dim(), 0);
        assert!(p.contains(&RVector::from_ints(&[0, 0])));
        assert!(c.is_subspace());

        // C = pos{(1,0)} in R^2 -> polar {y1 <= 0}
        let c = VCone::new(2, vec![RVector::from_ints(&[1, 0])], SubspaceBasis::empty(2));
        let p = c.polar();
        assert!(p.contains(&RVector::from_ints(&[-1, 7])));
        assert!(!p.contains(&RVector::from_ints(&[1, 0])));
    }

    #[test]
    fn vcone_relint_membership() {
        let c = VCone::new(
            2,
            vec![RVector::from_ints(&[1, 0]), RVector::from_ints(&[0, 1])],
            SubspaceBasis::empty(2),
        );
        assert!(c.relint_contains(&RVector::from_ints(&[1, 1])));
        assert!(!c.relint_contains(&RVector::from_ints(&[1, 0])));
        assert!(!c.relint_contains(&RVector::from_ints(&[0, 0])));
        assert!(c.contains(&RVector::from_ints(&[1, 0])));
    }

    #[test]
    fn cell_system_examples() {
        let sq = fixtures::unit_square();
        let l = enumerate_faces(&sq);
        // left edge: cell is [0, inf) x [0, 1]
        let left = l
            .iter()
            .find(|(_, f)| f.dim == 1 && f.relint_witness[0].is_zero())
            .unwrap();
        let cell = CellSystem::build(&sq, left.1);
        assert!(cell.contains(&RVector::new(vec![rat_int(2), crate::exactmath::rat(1, 2)])));
        assert!(!cell.contains(&RVector::from_ints(&[-1, 0])));
        assert!(!cell.contains(&RVector::from_ints(&[2, 2])));

        // F = P for a polytope: cell = P itself
        let cell = CellSystem::build(&sq, l.face(l.whole_id()));
        assert!(cell.contains(&RVector::from_ints(&[1, 1])));
        assert!(!cell.contains(&RVector::from_ints(&[2, 0])));

        // quadrant cone at its apex: cell = {0} - N = [0,inf)^2
        let q = fixtures::quadrant();
        let ql = enumerate_faces(&q);
        let apex = ql.iter().find(|(_, f)| f.dim == 0).unwrap();
        let cell = CellSystem::build(&q, apex.1);
        assert!(cell.contains(&RVector::from_ints(&[1, 1])));
        assert!(!cell.contains(&RVector::from_ints(&[-1, 1])));
    }

    #[test]
    fn cell_joint_system_matches_direct_membership() {
        let sq = fixtures::unit_square();
        let l = enumerate_faces(&sq);
        let left = l
            .iter()
            .find(|(_, f)| f.dim == 1 && f.relint_witness[0].is_zero())
            .unwrap();
        let cell = CellSystem::build(&sq, left.1);
        let (joint, drop) = cell.joint_system();
        let projected = lp::fm_eliminate(&joint, &drop);
        for pt in [
            RVector::from_ints(&[2, 0]),
            RVector::from_ints(&[2, 1]),
            RVector::from_ints(&[-1, 0]),
            RVector::from_ints(&[0, 2]),
            RVector::from_ints(&[5, 1]),
        ] {
            assert_eq!(projected.satisfied_by(&pt), cell.contains(&pt), "{pt:?}");
        }
    }

    #[test]
    fn face_of_rejects_empty() {
        let sq = fixtures::unit_square();
        // rows 0 (x1 <= 1) and 2 (-x1 <= 0) cannot both be tight
        assert!(face_of(&sq, &BTreeSet::from([0, 2])).is_err());
        let v = face_of(&sq, &BTreeSet::from([0, 1])).unwrap();
        assert_eq!(v.dim, 0);
        assert_eq!(v.relint_witness, RVector::from_ints(&[1, 1]));
    }
}
