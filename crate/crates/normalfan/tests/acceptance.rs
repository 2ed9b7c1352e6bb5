//! Acceptance gate: one test per criterion, each printing a single pass line.
//! Everything here is exact integer/rational equality with zero tolerance.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use normalfan::exactmath::{rat, Rat, RVector};
use normalfan::harness::{self, GenKind, GenSpec};
use normalfan::identity::PhiEvaluator;
use normalfan::polyhedron::{fixtures, HPolyhedron};

fn rand_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    let den = rng.gen_range(1..=4i64);
    rat(rng.gen_range(-bound * den..=bound * den), den)
}

fn rand_point(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> RVector {
    RVector::new((0..d).map(|_| rand_rat(rng, bound)).collect())
}

/// Checks phi_at == predicted on `random` uniform points plus every
/// constructed boundary-stratum sample (capped at `boundary`).
fn check_constant(e: &PhiEvaluator, seed: u64, random: usize, boundary: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = e.polyhedron().ambient_dim();
    let predicted = e.predicted_phi();
    let mut points: Vec<RVector> = (0..random).map(|_| rand_point(&mut rng, d, 12)).collect();
    points.extend(harness::boundary_samples(e, boundary, seed ^ 0x9e37));
    for x in points {
        let got = e.phi_at(&x).phi;
        assert_eq!(got, predicted, "phi at {x:?} on {:?}", e.polyhedron().rows());
    }
}

#[test]
fn criterion_1_polytopes_phi_is_one() {
    let dims = [1usize, 1, 1, 2, 2, 2, 3, 3, 3, 4];
    for seed in 0..100u64 {
        let d = dims[seed as usize % dims.len()];
        let m = if d == 4 { 2 } else { 3 + seed as usize % 3 };
        let p = harness::gen_instance(&GenSpec::new(seed, d, m, GenKind::Polytope)).unwrap();
        let e = PhiEvaluator::new(p);
        assert_eq!(e.predicted_phi(), 1);
        check_constant(&e, seed, 50, 20);
    }
    println!("criterion 1 (polytope constant 1): PASS");
}

#[test]
fn criterion_2_line_free_unbounded_phi_is_zero() {
    let dims = [1usize, 1, 1, 2, 2, 2, 3, 3, 3, 4];
    for seed in 0..100u64 {
        let d = dims[seed as usize % dims.len()];
        let m = 3 + seed as usize % 3;
        let p =
            harness::gen_instance(&GenSpec::new(seed, d, m, GenKind::LineFreeUnbounded)).unwrap();
        let e = PhiEvaluator::new(p);
        assert_eq!(e.predicted_phi(), 0);
        check_constant(&e, seed, 50, 20);
    }
    println!("criterion 2 (line-free unbounded constant 0): PASS");
}

#[test]
fn criterion_3_lineality_constant() {
    let mut seen: BTreeSet<(usize, bool)> = BTreeSet::new();
    for (k, d) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)] {
        for seed in 0..5u64 {
            let m = if d == 4 { 2 } else { 3 };
            let p = harness::gen_instance(&GenSpec::new(
                1000 + seed,
                d,
                m,
                GenKind::WithLineality(k),
            ))
            .unwrap();
            let e = PhiEvaluator::new(p);
            let dec = e.decomposition();
            assert_eq!(dec.u_basis.dim(), k);
            let expect = if dec.p0_bounded {
                if k % 2 == 0 { 1 } else { -1 }
            } else {
                0
            };
            assert_eq!(e.predicted_phi(), expect);
            seen.insert((k, dec.p0_bounded));
            check_constant(&e, seed, 50, 20);
        }
    }
    // both bounded and unbounded cores must actually occur for each k
    for combo in [(1, true), (1, false), (2, true), (2, false)] {
        assert!(seen.contains(&combo), "missing core class {combo:?}");
    }
    println!("criterion 3 (lineality constant (-1)^k): PASS");
}

#[test]
fn criterion_4_euler_relation() {
    // random non-subspace cones sum to zero
    for seed in 0..100u64 {
        let d = 1 + seed as usize % 4;
        let m = 3 + seed as usize % 3;
        let p = harness::gen_instance(&GenSpec::new(seed, d, m, GenKind::Cone)).unwrap();
        let e = PhiEvaluator::new(p);
        assert_eq!(e.euler_sum().unwrap(), 0, "seed {seed}");
    }
    // coordinate subspaces of dimension k in R^4 sum to (-1)^k
    for k in 0..=4usize {
        let mut rows = Vec::new();
        for i in k..4 {
            rows.push((RVector::unit(4, i), Rat::zero()));
            rows.push((-&RVector::unit(4, i), Rat::zero()));
        }
        let p = HPolyhedron::new(4, rows).unwrap();
        let expect = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(PhiEvaluator::new(p).euler_sum().unwrap(), expect, "k = {k}");
    }
    println!("criterion 4 (Euler relation): PASS");
}

/// Small mixed corpus shared by the covering / oracle / strata criteria.
fn corpus(max_dim: usize) -> Vec<PhiEvaluator> {
    let mut ps = vec![
        fixtures::unit_square(),
        fixtures::unit_cube(),
        fixtures::quadrant(),
        fixtures::half_plane(),
        fixtures::line_x_axis(),
        fixtures::segment01(),
        fixtures::whole_plane(),
    ];
    let gen = |seed, d, m, kind| harness::gen_instance(&GenSpec::new(seed, d, m, kind)).unwrap();
    ps.push(gen(11, 2, 4, GenKind::Polytope));
    ps.push(gen(12, 3, 2, GenKind::Polytope));
    ps.push(gen(13, 2, 3, GenKind::LineFreeUnbounded));
    ps.push(gen(14, 3, 3, GenKind::LineFreeUnbounded));
    ps.push(gen(15, 3, 3, GenKind::WithLineality(1)));
    ps.retain(|p| p.ambient_dim() <= max_dim);
    ps.into_iter().map(PhiEvaluator::new).collect()
}

#[test]
fn criterion_5_covering_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let es = corpus(3);
    let mut total = 0usize;
    for e in &es {
        let d = e.polyhedron().ambient_dim();
        for _ in 0..90 {
            let y = rand_point(&mut rng, d, 10);
            let w = e.covering_witness(&y).unwrap();
            // the split is genuine: y = x + u with x on the face
            assert_eq!(&w.x + &w.u, y);
            total += 1;
        }
    }
    assert!(total >= 1000, "only {total} covering samples");
    println!("criterion 5 (covering identity, {total} points): PASS");
}

#[test]
fn criterion_6_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for e in &corpus(3) {
        let d = e.polyhedron().ambient_dim();
        let hreps = harness::oracle_cell_hreps(e);
        let mut points: Vec<RVector> = (0..10).map(|_| rand_point(&mut rng, d, 10)).collect();
        points.extend(harness::boundary_samples(e, 10, 666));
        for x in points {
            assert_eq!(
                harness::oracle_phi_with(e, &hreps, &x),
                e.phi_at(&x).phi,
                "{x:?}"
            );
        }
    }
    println!("criterion 6 (Fourier-Motzkin oracle equivalence): PASS");
}

/// A random displacement in the given subspace, halved until its exact
/// squared norm is at most eps^2.
fn small_displacement(
    rng: &mut ChaCha8Rng,
    basis: &normalfan::exactmath::SubspaceBasis,
    eps: &Rat,
) -> RVector {
    let mut w = RVector::zero(basis.ambient_dim());
    for v in basis.vectors() {
        w = &w + &v.scale(&rat(rng.gen_range(-3..=3i64), 4));
    }
    let half = rat(1, 2);
    let cap = eps * eps;
    while w.norm_sq() > cap {
        w = w.scale(&half);
    }
    w
}

#[test]
fn criterion_7_strata_split_and_localization() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for e in &corpus(3) {
        let d = e.polyhedron().ambient_dim();
        for x in harness::boundary_samples(e, 6, 777) {
            assert!(e.check_interval_disjoint(&x), "disjointness at {x:?}");
            assert!(e.split_identity_check(&x, &x));
            for _ in 0..2 {
                let y = &x + &rand_point(&mut rng, d, 1).scale(&rat(1, 8));
                assert!(e.split_identity_check(&x, &y), "split at {x:?} -> {y:?}");
            }
            for s in e.strata_at(&x) {
                let eps = e.safe_radius(s.g);
                let local = e.localize(s.g, s.h).unwrap();
                for _ in 0..10 {
                    let w = small_displacement(&mut rng, &local.l3, &eps);
                    assert!(
                        e.lemma2_check(s.g, s.h, &x, &w, &eps).unwrap(),
                        "localization at {x:?} + {w:?}"
                    );
                }
            }
        }
    }
    println!("criterion 7 (disjointness, split, localization): PASS");
}

#[test]
fn criterion_8_degree_psi_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let es: Vec<PhiEvaluator> = vec![
        fixtures::unit_square(),
        fixtures::unit_cube(),
        fixtures::quadrant(),
        fixtures::segment01(),
    ]
    .into_iter()
    .map(PhiEvaluator::new)
    .collect();

    // degree = (-1)^d phi at regular points
    let mut regular = 0usize;
    'outer: loop {
        for e in &es {
            let d = e.polyhedron().ambient_dim();
            let z = rand_point(&mut rng, d, 10);
            if let Some(deg) = e.degree_at(&z) {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                assert_eq!(deg, sign * e.phi_at(&z).phi);
                regular += 1;
                if regular >= 500 {
                    break 'outer;
                }
            }
        }
    }

    // psi is the identity on P: random convex combinations of face witnesses
    let mut on_p = 0usize;
    'psi: loop {
        for e in &es {
            let d = e.polyhedron().ambient_dim();
            let witnesses: Vec<&RVector> =
                e.lattice().iter().map(|(_, f)| &f.relint_witness).collect();
            let mut y = RVector::zero(d);
            let mut total = Rat::zero();
            for w in &witnesses {
                let c = rat(rng.gen_range(0..=3i64), 3);
                y = &y + &w.scale(&c);
                total += c;
            }
            if total.is_zero() {
                continue;
            }
            let y = y.scale(&(Rat::from_integer(1.into()) / total));
            assert!(e.polyhedron().contains(&y));
            assert_eq!(e.psi(&y).unwrap(), y, "psi not identity at {y:?}");
            on_p += 1;
            if on_p >= 500 {
                break 'psi;
            }
        }
    }

    // the projection beats every sampled competitor in exact squared distance
    for e in &es {
        let d = e.polyhedron().ambient_dim();
        for _ in 0..15 {
            let y = rand_point(&mut rng, d, 10);
            let p = e.project_onto(&y).unwrap();
            let dp = (&y - &p).norm_sq();
            for (_, f) in e.lattice().iter() {
                let c = &f.relint_witness;
                assert!(dp <= (&y - c).norm_sq(), "witness beats projection of {y:?}");
            }
        }
    }
    println!("criterion 8 (degree, reflection, projection): PASS");
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> Vec<u8> {
    std::fs::read(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_normalfan"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap(), out.stdout)
}

#[test]
fn criterion_9_golden_cli_examples() {
    let sq = fixture("square.json");
    let sq = sq.to_str().unwrap();
    let cases: &[(&[&str], &str)] = &[
        (&["faces", sq], "faces-square.json"),
        (&["phi", "--point", "2,1/2", sq], "phi-square-right.json"),
        (&["phi", "--point", "2,0", sq], "phi-square-corner-ray.json"),
        (&["phi", "--point", "1/2,1/2", sq], "phi-square-interior.json"),
        (&["covering", "--point", "2,1/2", sq], "covering-square.json"),
        (&["psi", "--point", "2,1/2", sq], "psi-square-edge.json"),
        (&["psi", "--point", "2,2", sq], "psi-square-corner.json"),
        (&["project", "--point", "2,1/2", sq], "project-square.json"),
        (&["degree", "--point", "2,1/2", sq], "degree-square-regular.json"),
        (&["degree", "--point", "2,0", sq], "degree-square-nonregular.json"),
        (&["strata", "--point", "2,0", sq], "strata-square.json"),
    ];
    for (args, expect) in cases {
        let (code, stdout) = run_cli(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(stdout, golden(expect), "{args:?}");
    }

    let cube = fixture("cube.json");
    let (code, stdout) = run_cli(&["faces", cube.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, golden("faces-cube.json"));

    let quad = fixture("quadrant.json");
    let (code, stdout) = run_cli(&["euler", quad.to_str().unwrap()]);
    assert_eq!((code, stdout), (0, golden("euler-quadrant.json")));

    let hp = fixture("half_plane.json");
    let (code, stdout) = run_cli(&["decompose", hp.to_str().unwrap()]);
    assert_eq!((code, stdout), (0, golden("decompose-half-plane.json")));

    let line = fixture("line.json");
    let (code, stdout) = run_cli(&["decompose", line.to_str().unwrap()]);
    assert_eq!((code, stdout), (0, golden("decompose-line.json")));

    // error-path exit codes
    let (code, _) = run_cli(&["phi", "--point", "1,2,3", sq]);
    assert_eq!(code, 2, "dimension mismatch must exit 2");
    let seg = fixture("segment.json");
    let (code, _) = run_cli(&["euler", seg.to_str().unwrap()]);
    assert_eq!(code, 2, "euler on a non-cone must exit 2");

    // determinism: identical argv => byte-identical output
    let again = run_cli(&["faces", sq]).1;
    assert_eq!(again, golden("faces-square.json"));
    println!("criterion 9 (golden CLI examples): PASS");
}
