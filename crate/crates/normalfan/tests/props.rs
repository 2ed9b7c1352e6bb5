//! Property tests for the exact kernels: linear algebra invariants, the
//! simplex against brute force, Fourier-Motzkin against LP feasibility, and
//! the constancy of the signed indicator sum on random instances.

use proptest::prelude::*;

use num_traits::Zero;

use normalfan::exactmath::{fmt_rat, parse_rat, rat, RMatrix, RVector, SubspaceBasis};
use normalfan::harness::{self, GenKind, GenSpec};
use normalfan::identity::PhiEvaluator;
use normalfan::json::PolyhedronJson;
use normalfan::lp::{self, LinearSystem};

fn small_rat() -> impl Strategy<Value = normalfan::exactmath::Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn small_vec(d: usize) -> impl Strategy<Value = RVector> {
    proptest::collection::vec(small_rat(), d).prop_map(RVector::new)
}

fn small_matrix(d: usize) -> impl Strategy<Value = Vec<RVector>> {
    proptest::collection::vec(small_vec(d), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn orth_complement_is_an_involution(rows in small_matrix(3)) {
        let s = SubspaceBasis::new(3, rows);
        let perp = s.orth_complement();
        prop_assert_eq!(s.dim() + perp.dim(), 3);
        let back = perp.orth_complement();
        prop_assert_eq!(back.dim(), s.dim());
        for v in s.vectors() {
            prop_assert!(back.contains(v));
        }
        for u in s.vectors() {
            for w in perp.vectors() {
                prop_assert!(u.dot(w).is_zero());
            }
        }
    }

    #[test]
    fn rank_plus_kernel_is_dimension(rows in small_matrix(4)) {
        let m = RMatrix::from_rows(4, rows);
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), 4);
    }

    #[test]
    fn rational_literals_roundtrip(r in small_rat()) {
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn feasibility_witness_satisfies_the_system(
        normals in small_matrix(2),
        rhs in proptest::collection::vec(small_rat(), 4),
    ) {
        let mut s = LinearSystem::new(2);
        for (n, b) in normals.iter().zip(&rhs) {
            s.push_ineq(n.clone(), b.clone());
        }
        let out = lp::feasible(&s);
        if let Some(w) = &out.witness {
            prop_assert!(s.satisfied_by(w));
        }
    }

    #[test]
    fn elimination_preserves_feasibility(
        normals in small_matrix(3),
        rhs in proptest::collection::vec(small_rat(), 4),
        probe in small_vec(2),
    ) {
        // project onto the first two coordinates and compare against the LP:
        // probe extends to a full solution iff it satisfies the projection
        let mut s = LinearSystem::new(3);
        for (n, b) in normals.iter().zip(&rhs) {
            s.push_ineq(n.clone(), b.clone());
        }
        let drop = std::collections::BTreeSet::from([2usize]);
        let projected = lp::fm_eliminate(&s, &drop);
        let mut pinned = s.clone();
        pinned.push_eq(RVector::unit(3, 0), probe[0].clone());
        pinned.push_eq(RVector::unit(3, 1), probe[1].clone());
        prop_assert_eq!(
            projected.satisfied_by(&probe),
            lp::feasible(&pinned).is_feasible()
        );
    }

    #[test]
    fn phi_is_constant_on_random_polytopes(seed in 0u64..500, x in small_vec(2)) {
        let p = harness::gen_instance(&GenSpec::new(seed, 2, 3, GenKind::Polytope)).unwrap();
        let e = PhiEvaluator::new(p);
        prop_assert_eq!(e.phi_at(&x).phi, 1);
    }

    #[test]
    fn covering_is_unique_on_random_instances(seed in 0u64..500, y in small_vec(2)) {
        let kind = if seed % 2 == 0 { GenKind::Polytope } else { GenKind::LineFreeUnbounded };
        let p = harness::gen_instance(&GenSpec::new(seed, 2, 3, kind)).unwrap();
        let e = PhiEvaluator::new(p);
        let w = e.covering_witness(&y).unwrap();
        prop_assert_eq!(&w.x + &w.u, y);
        prop_assert!(e.polyhedron().contains(&w.x));
    }

    #[test]
    fn polyhedron_json_roundtrips(seed in 0u64..500) {
        let p = harness::gen_instance(&GenSpec::new(seed, 3, 3, GenKind::Polytope)).unwrap();
        let j = PolyhedronJson::from_polyhedron(&p);
        let text = serde_json::to_string(&j).unwrap();
        let back: PolyhedronJson = serde_json::from_str(&text).unwrap();
        let q = back.to_polyhedron().unwrap();
        prop_assert_eq!(p.rows().len(), q.rows().len());
        for (a, b) in p.rows().iter().zip(q.rows()) {
            prop_assert_eq!(&a.normal, &b.normal);
            prop_assert_eq!(&a.rhs, &b.rhs);
        }
    }
}
