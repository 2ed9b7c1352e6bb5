use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::exactmath::{RMatrix, RVector};
use crate::lp;
use crate::Error;

use super::hpoly::HPolyhedron;

/// A nonempty face, identified by its canonical active set: exactly the rows
/// tight on all of the face, closed under implied tightness.
#[derive(Clone, Debug)]
pub struct Face {
    pub active: BTreeSet<usize>,
    pub dim: usize,
    pub relint_witness: RVector,
    pub is_whole: bool,
}

/// Identifier of a face inside its lattice.
pub type FaceId = usize;

/// All nonempty faces of a polyhedron, P itself included, ordered by
/// (dimension, active set) for deterministic output.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    by_active: BTreeMap<BTreeSet<usize>, FaceId>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FaceId, &Face)> {
        self.faces.iter().enumerate()
    }

    pub fn id_of_active(&self, active: &BTreeSet<usize>) -> Option<FaceId> {
        self.by_active.get(active).copied()
    }

    pub fn whole_id(&self) -> FaceId {
        self.faces
            .iter()
            .position(|f| f.is_whole)
            .expect("lattice contains P itself")
    }

    /// G subset of F iff I_F is a subset of I_G.
    pub fn is_subface(&self, g: FaceId, f: FaceId) -> bool {
        self.faces[f].active.is_subset(&self.faces[g].active)
    }

    /// The interval I(G,H) = {F : G subset F subset H}.
    pub fn interval(&self, g: FaceId, h: FaceId) -> Result<Vec<FaceId>, Error> {
        if !self.is_subface(g, h) {
            return Err(Error::NotComparable(format!(
                "face {g} is not contained in face {h}"
            )));
        }
        Ok(self
            .iter()
            .filter(|(f, _)| self.is_subface(g, *f) && self.is_subface(*f, h))
            .map(|(f, _)| f)
            .collect())
    }

    /// Ordered pairs (G, H) with G a proper subface of H.
    pub fn proper_pairs(&self) -> Vec<(FaceId, FaceId)> {
        let mut out = Vec::new();
        for g in 0..self.len() {
            for h in 0..self.len() {
                if g != h && self.is_subface(g, h) {
                    out.push((g, h));
                }
            }
        }
        out
    }
}

/// Breadth-first face enumeration: starting from P, tighten one more row at a
/// time, canonicalize the active set through the implicit-equality LP, and
/// deduplicate. Exponential in the worst case; fine at desk scale.
pub fn enumerate_faces(p: &HPolyhedron) -> FaceLattice {
    let m = p.rows().len();
    let mut faces: Vec<Face> = Vec::new();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();

    let root = canonical_face(p, p.implicit()).expect("P is nonempty");
    seen.insert(root.active.clone());
    queue.push_back(root.active.clone());
    faces.push(root);

    while let Some(active) = queue.pop_front() {
        for i in 0..m {
            if active.contains(&i) {
                continue;
            }
            let mut candidate = active.clone();
            candidate.insert(i);
            let Some(face) = canonical_face(p, &candidate) else {
                continue;
            };
            if seen.insert(face.active.clone()) {
                queue.push_back(face.active.clone());
                faces.push(face);
            }
        }
    }

    faces.sort_by(|a, b| (a.dim, &a.active).cmp(&(b.dim, &b.active)));
    let by_active = faces
        .iter()
        .enumerate()
        .map(|(id, f)| (f.active.clone(), id))
        .collect();
    FaceLattice { faces, by_active }
}

/// The face obtained by forcing `tight` rows to equality, with its canonical
/// active set, or `None` if that face is empty.
pub fn canonical_face(p: &HPolyhedron, tight: &BTreeSet<usize>) -> Option<Face> {
    let system = p.face_system(tight);
    let (implicit, witness) = lp::implicit_with_witness(&system).ok()?;
    debug_assert!(tight.iter().all(|i| implicit.contains(i)));
    let normals: Vec<RVector> = implicit
        .iter()
        .map(|&i| p.rows()[i].normal.clone())
        .filter(|n| !n.is_zero())
        .collect();
    let rank = if normals.is_empty() {
        0
    } else {
        RMatrix::from_rows(p.ambient_dim(), normals).rank()
    };
    let is_whole = implicit == *p.implicit();
    Some(Face {
        active: implicit,
        dim: p.ambient_dim() - rank,
        relint_witness: witness,
        is_whole,
    })
}
