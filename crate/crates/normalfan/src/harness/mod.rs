//! Deterministic random-instance generation and independent brute-force
//! oracles. Instances come in the classes the constant distinguishes:
//! polytopes, cones, line-free unbounded sets, and sets with a prescribed
//! lineality dimension. The oracles recompute cell membership from explicit
//! eliminated H-representations, with no shared code path past the raw
//! linear systems.

use num_traits::Zero;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{rat, rat_int, Rat, RVector};
use crate::identity::PhiEvaluator;
use crate::lp::{fm_eliminate, LinearSystem};
use crate::polyhedron::{FaceId, HPolyhedron};
use crate::Error;

const RESAMPLE_CAP: usize = 100;

/// Instance class; mirrors the cases of the constancy theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Bounded: random rows intersected with a coefficient-bound box.
    Polytope,
    /// All right-hand sides zero; resampled until not a linear subspace.
    Cone,
    /// Trivial lineality but nontrivial recession cone.
    LineFreeUnbounded,
    /// Exactly k lineality dimensions, realized by padding a line-free core
    /// with zero columns and mixing with a signed coordinate permutation.
    WithLineality(usize),
}

/// Everything that determines a generated instance. Equal specs generate
/// bit-identical polyhedra.
#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub seed: u64,
    pub dim: usize,
    pub n_constraints: usize,
    pub kind: GenKind,
    pub coefficient_bound: i64,
}

impl GenSpec {
    pub fn new(seed: u64, dim: usize, n_constraints: usize, kind: GenKind) -> Self {
        Self {
            seed,
            dim,
            n_constraints,
            kind,
            coefficient_bound: 8,
        }
    }
}

/// Generates the instance described by `spec`, resampling rejected draws up
/// to a fixed cap so a bad seed fails loudly instead of looping.
pub fn gen_instance(spec: &GenSpec) -> Result<HPolyhedron, Error> {
    assert!(spec.dim >= 1 && spec.n_constraints >= 1);
    assert!(spec.coefficient_bound >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::Polytope => retry(|| gen_polytope(spec, &mut rng, spec.dim)),
        GenKind::Cone => retry(|| gen_cone(spec, &mut rng)),
        GenKind::LineFreeUnbounded => {
            retry(|| gen_line_free_unbounded(spec, &mut rng, spec.dim))
        }
        GenKind::WithLineality(k) => retry(|| gen_with_lineality(spec, &mut rng, k)),
    }
}

fn retry<F>(mut draw: F) -> Result<HPolyhedron, Error>
where
    F: FnMut() -> Option<HPolyhedron>,
{
    for _ in 0..RESAMPLE_CAP {
        if let Some(p) = draw() {
            return Ok(p);
        }
    }
    Err(Error::ResampleLimit(RESAMPLE_CAP))
}

fn random_normal(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> RVector {
    loop {
        let v = RVector::new((0..d).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

fn gen_polytope(spec: &GenSpec, rng: &mut ChaCha8Rng, d: usize) -> Option<HPolyhedron> {
    let b = spec.coefficient_bound;
    let mut rows: Vec<(RVector, Rat)> = (0..spec.n_constraints)
        .map(|_| (random_normal(rng, d, b), rat_int(rng.gen_range(1..=b))))
        .collect();
    for k in 0..d {
        rows.push((RVector::unit(d, k), rat_int(b)));
        rows.push((-&RVector::unit(d, k), rat_int(b)));
    }
    // right-hand sides are positive, so 0 is feasible and `new` cannot fail
    let p = HPolyhedron::new(d, rows).ok()?;
    debug_assert!(p.is_bounded());
    Some(p)
}

fn gen_cone(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Option<HPolyhedron> {
    let rows: Vec<(RVector, Rat)> = (0..spec.n_constraints)
        .map(|_| (random_normal(rng, spec.dim, spec.coefficient_bound), Rat::zero()))
        .collect();
    let p = HPolyhedron::new(spec.dim, rows).ok()?;
    // reject subspaces: the Euler-relation tests need the generic case
    if p.poly_dim() == p.lineality_basis().dim() {
        return None;
    }
    Some(p)
}

fn gen_line_free_unbounded(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
    d: usize,
) -> Option<HPolyhedron> {
    let b = spec.coefficient_bound;
    let rows: Vec<(RVector, Rat)> = (0..spec.n_constraints.max(d))
        .map(|_| (random_normal(rng, d, b), rat_int(rng.gen_range(0..=b))))
        .collect();
    let p = HPolyhedron::new(d, rows).ok()?;
    if p.lineality_basis().dim() != 0 || p.is_bounded() {
        return None;
    }
    Some(p)
}

fn gen_with_lineality(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
    k: usize,
) -> Option<HPolyhedron> {
    assert!(k >= 1 && k < spec.dim, "lineality dimension must satisfy 1 <= k < d");
    let d0 = spec.dim - k;
    // line-free core, bounded or unbounded with equal odds
    let core = if rng.gen_bool(0.5) {
        gen_polytope(spec, rng, d0)?
    } else {
        gen_line_free_unbounded(spec, rng, d0)?
    };
    // pad with k zero columns, then mix with a signed coordinate permutation
    // (an exact orthogonal map), so dim U_P = k exactly
    let mut dest: Vec<usize> = (0..spec.dim).collect();
    dest.shuffle(rng);
    let signs: Vec<i64> = (0..spec.dim).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let rows = core
        .rows()
        .iter()
        .map(|r| {
            let mut normal = vec![Rat::zero(); spec.dim];
            for (j, c) in r.normal.iter().enumerate() {
                normal[dest[j]] = c * rat_int(signs[dest[j]]);
            }
            (RVector::new(normal), r.rhs.clone())
        })
        .collect();
    let p = HPolyhedron::new(spec.dim, rows).ok()?;
    debug_assert_eq!(p.lineality_basis().dim(), k);
    Some(p)
}

/// Deterministic boundary-stratum samples: for every proper face pair
/// (G, H), points g - v with g the relint witness of G and v a strictly
/// positive combination of N(P,H)'s generators plus a lineality shift,
/// together with g itself and scaled variants. Capped at `count` points.
pub fn boundary_samples(e: &PhiEvaluator, count: usize, seed: u64) -> Vec<RVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = e.polyhedron().ambient_dim();
    let mut out = Vec::new();
    let pairs = e.lattice().proper_pairs();
    'rounds: for round in 0..usize::MAX {
        if pairs.is_empty() {
            break;
        }
        for &(g, h) in &pairs {
            if out.len() >= count {
                break 'rounds;
            }
            let gw = &e.face(g).relint_witness;
            let cone = e.normal_cone_of(h);
            let mut v = RVector::zero(d);
            for u in cone.generators() {
                v = &v + &u.scale(&rat(rng.gen_range(1..=6), rng.gen_range(1..=3)));
            }
            for w in cone.lineality().vectors() {
                v = &v + &w.scale(&rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)));
            }
            let scale = match round % 3 {
                0 => rat_int(1),
                1 => rat(1, 2),
                _ => rat_int(3),
            };
            out.push(gw - &v.scale(&scale));
            if round == 0 && out.len() < count {
                out.push(gw.clone());
            }
        }
    }
    out
}

/// Explicit H-representation of every cell F - N(P,F), obtained by
/// Fourier-Motzkin elimination of the auxiliary variables from the joint
/// cell system. Desk scale only.
pub fn oracle_cell_hreps(e: &PhiEvaluator) -> Vec<(FaceId, LinearSystem)> {
    e.lattice()
        .iter()
        .map(|(id, _)| {
            let (joint, drop) = e.cell(id).joint_system();
            (id, fm_eliminate(&joint, &drop))
        })
        .collect()
}

/// The signed indicator sum evaluated through explicit cell H-reps; an
/// independent oracle for `phi_at` on small instances.
pub fn oracle_phi(e: &PhiEvaluator, x: &RVector) -> i64 {
    oracle_phi_with(e, &oracle_cell_hreps(e), x)
}

/// `oracle_phi` against precomputed H-reps, for repeated queries.
pub fn oracle_phi_with(
    e: &PhiEvaluator,
    hreps: &[(FaceId, LinearSystem)],
    x: &RVector,
) -> i64 {
    hreps
        .iter()
        .filter(|(_, s)| s.satisfied_by(x))
        .map(|(id, _)| if e.face(*id).dim % 2 == 0 { 1 } else { -1 })
        .sum()
}
