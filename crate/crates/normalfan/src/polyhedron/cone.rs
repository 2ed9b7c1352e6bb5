use num_traits::Zero;

use crate::exactmath::{Rat, RVector, SubspaceBasis};
use crate::lp::{self, LinearSystem, LpStatus};
use crate::Error;

use super::faces::Face;
use super::hpoly::HPolyhedron;

/// Polyhedral cone in V-form: pos(generators) + span(lineality).
#[derive(Clone, Debug)]
pub struct VCone {
    ambient_dim: usize,
    generators: Vec<RVector>,
    lineality: SubspaceBasis,
}

impl VCone {
    pub fn new(ambient_dim: usize, generators: Vec<RVector>, lineality: SubspaceBasis) -> Self {
        assert_eq!(lineality.ambient_dim(), ambient_dim);
        for g in &generators {
            assert_eq!(g.dim(), ambient_dim);
        }
        Self {
            ambient_dim,
            generators,
            lineality,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, vec![], SubspaceBasis::empty(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[RVector] {
        &self.generators
    }

    pub fn lineality(&self) -> &SubspaceBasis {
        &self.lineality
    }

    /// Span of generators and lineality together.
    pub fn span(&self) -> SubspaceBasis {
        let mut vs = self.generators.clone();
        vs.extend(self.lineality.vectors().iter().cloned());
        SubspaceBasis::new(self.ambient_dim, vs)
    }

    /// Coefficient system `sum lambda_i g_i + sum mu_j w_j = v, lambda >= 0`,
    /// with an extra shared-slack variable t (lambda_i >= t) when `strict`.
    fn coeff_system(&self, v: &RVector, strict: bool) -> LinearSystem {
        let ng = self.generators.len();
        let nl = self.lineality.dim();
        let nvars = ng + nl + usize::from(strict);
        let mut s = LinearSystem::new(nvars);
        for k in 0..self.ambient_dim {
            let mut row = Vec::with_capacity(nvars);
            for g in &self.generators {
                row.push(g[k].clone());
            }
            for w in self.lineality.vectors() {
                row.push(w[k].clone());
            }
            if strict {
                row.push(Rat::zero());
            }
            s.push_eq(RVector::new(row), v[k].clone());
        }
        for i in 0..ng {
            let mut row = vec![Rat::zero(); nvars];
            row[i] = -Rat::from_integer(1.into());
            if strict {
                row[ng + nl] = Rat::from_integer(1.into());
            }
            s.push_ineq(RVector::new(row), Rat::zero());
        }
        if strict {
            s.push_ineq(RVector::unit(nvars, ng + nl), Rat::from_integer(1.into()));
        }
        s
    }

    /// Membership by LP over the generator coefficients.
    pub fn contains(&self, v: &RVector) -> bool {
        assert_eq!(v.dim(), self.ambient_dim);
        if self.generators.is_empty() {
            return self.lineality.contains(v);
        }
        lp::feasible(&self.coeff_system(v, false)).is_feasible()
    }

    /// Relative-interior membership: v is a combination with every generator
    /// coefficient strictly positive (relint pos{g_i} + span W).
    pub fn relint_contains(&self, v: &RVector) -> bool {
        assert_eq!(v.dim(), self.ambient_dim);
        if self.generators.is_empty() {
            return self.lineality.contains(v);
        }
        let ng = self.generators.len();
        let nl = self.lineality.dim();
        let s = self.coeff_system(v, true);
        let out = lp::optimize(&RVector::unit(ng + nl + 1, ng + nl), &s);
        out.status == LpStatus::Optimal && out.value.expect("capped slack") > Rat::zero()
    }

    /// A cone is a linear subspace iff every generator's negation is a member.
    pub fn is_subspace(&self) -> bool {
        self.generators.iter().all(|g| self.contains(&(-g)))
    }

    /// Exact H-representation of the polar cone
    /// {y : <y,g> <= 0 for generators, <y,w> = 0 for lineality}.
    pub fn polar(&self) -> HPolyhedron {
        let mut rows: Vec<(RVector, Rat)> = Vec::new();
        for g in &self.generators {
            rows.push((g.clone(), Rat::zero()));
        }
        for w in self.lineality.vectors() {
            rows.push((w.clone(), Rat::zero()));
            rows.push((-w, Rat::zero()));
        }
        if rows.is_empty() {
            // polar of {0} is the whole space
            return HPolyhedron::new(self.ambient_dim, vec![]).expect("R^d is nonempty");
        }
        HPolyhedron::new(self.ambient_dim, rows).expect("polar cone contains the origin")
    }
}

/// Normal cone of P at a face: positive hull of the non-implicit active row
/// normals, plus the span of the implicit-equality normals (which is
/// L(P)^perp, so N(P,P) = L(P)^perp falls out of the same formula).
pub fn normal_cone(p: &HPolyhedron, face: &Face) -> VCone {
    let generators: Vec<RVector> = face
        .active
        .iter()
        .filter(|i| !p.implicit().contains(i))
        .map(|&i| p.rows()[i].normal.clone())
        .collect();
    let lineality = SubspaceBasis::new(
        p.ambient_dim(),
        p.implicit()
            .iter()
            .map(|&i| p.rows()[i].normal.clone())
            .collect(),
    );
    VCone::new(p.ambient_dim(), generators, lineality)
}

/// Implicit membership system for the Minkowski cell F - N(P,F):
/// x is in the cell iff some f with the face's rows tight satisfies
/// f - x = sum lambda_i u_i + sum mu_j w_j with lambda >= 0.
///
/// The face point f = x + sum lambda_i u_i + sum mu_j w_j is substituted out,
/// so the membership LP runs over the coefficients (lambda, mu) alone: row i
/// of P becomes `<a_i, x> + sum lambda_j <a_i,u_j> + sum mu_k <a_i,w_k> <= b_i`
/// (an equality for the face's active rows).
#[derive(Clone, Debug)]
pub struct CellSystem {
    ambient_dim: usize,
    n_gen: usize,
    n_lin: usize,
    rows: Vec<CellRow>,
}

#[derive(Clone, Debug)]
struct CellRow {
    normal: RVector,
    /// <a_i, u_j> for the generators, then <a_i, w_k> for the lineality
    dots: RVector,
    rhs: Rat,
    active: bool,
}

impl CellSystem {
    pub fn build(p: &HPolyhedron, face: &Face) -> CellSystem {
        let d = p.ambient_dim();
        let cone = normal_cone(p, face);
        let ng = cone.generators().len();
        let nl = cone.lineality().dim();
        let rows = p
            .rows()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut dots = Vec::with_capacity(ng + nl);
                for g in cone.generators() {
                    dots.push(r.normal.dot(g));
                }
                for w in cone.lineality().vectors() {
                    dots.push(r.normal.dot(w));
                }
                CellRow {
                    normal: r.normal.clone(),
                    dots: RVector::new(dots),
                    rhs: r.rhs.clone(),
                    active: face.active.contains(&i),
                }
            })
            .collect();
        CellSystem {
            ambient_dim: d,
            n_gen: ng,
            n_lin: nl,
            rows,
        }
    }

    /// The coefficient system with the query point substituted.
    pub fn instantiate(&self, x: &RVector) -> LinearSystem {
        assert_eq!(x.dim(), self.ambient_dim);
        let nvars = self.n_gen + self.n_lin;
        let mut s = LinearSystem::new(nvars);
        for r in &self.rows {
            let rhs = &r.rhs - &r.normal.dot(x);
            if r.active {
                s.push_eq(r.dots.clone(), rhs);
            } else {
                s.push_ineq(r.dots.clone(), rhs);
            }
        }
        for j in 0..self.n_gen {
            s.push_ineq(-&RVector::unit(nvars, j), Rat::zero());
        }
        s
    }

    /// One exact feasibility LP.
    pub fn contains(&self, x: &RVector) -> bool {
        lp::feasible(&self.instantiate(x)).is_feasible()
    }

    /// Joint system over (x, lambda, mu) plus the index set of the auxiliary
    /// coordinates, ready for Fourier-Motzkin projection onto x.
    pub fn joint_system(&self) -> (LinearSystem, std::collections::BTreeSet<usize>) {
        let d = self.ambient_dim;
        let nvars = d + self.n_gen + self.n_lin;
        let mut s = LinearSystem::new(nvars);
        for r in &self.rows {
            let row = RVector::new(
                r.normal
                    .iter()
                    .chain(r.dots.iter())
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            if r.active {
                s.push_eq(row, r.rhs.clone());
            } else {
                s.push_ineq(row, r.rhs.clone());
            }
        }
        for j in 0..self.n_gen {
            s.push_ineq(-&RVector::unit(nvars, d + j), Rat::zero());
        }
        let drop = (d..nvars).collect();
        (s, drop)
    }
}

/// Face of `p` obtained by forcing `active` rows tight; error if empty.
pub fn face_of(p: &HPolyhedron, active: &std::collections::BTreeSet<usize>) -> Result<Face, Error> {
    super::faces::canonical_face(p, active).ok_or(Error::EmptyPolyhedron)
}
