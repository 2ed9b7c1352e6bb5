//! JSON wire formats. Rationals are always strings ("p/q", or "p" when the
//! denominator is 1) so exactness survives the wire; field order follows the
//! struct declarations, giving byte-identical output for identical input.

use serde::{Deserialize, Serialize};

use crate::exactmath::{fmt_rat, parse_rat, RVector, SubspaceBasis};
use crate::harness::{GenKind, GenSpec};
use crate::identity::{PhiReport, VerifyReport};
use crate::lp::LinearSystem;
use crate::polyhedron::{Face, HPolyhedron};
use crate::Error;

pub fn vector_to_json(v: &RVector) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn vector_from_json(entries: &[String]) -> Result<RVector, Error> {
    entries
        .iter()
        .map(|s| parse_rat(s).map_err(Error::Parse))
        .collect::<Result<Vec<_>, _>>()
        .map(RVector::new)
}

fn basis_to_json(b: &SubspaceBasis) -> Vec<Vec<String>> {
    b.vectors().iter().map(vector_to_json).collect()
}

/// {"d", "A", "b", "eqs"?}; equality rows expand into inequality pairs on
/// construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub d: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eqs: Option<EqBlock>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EqBlock {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
}

impl PolyhedronJson {
    pub fn from_polyhedron(p: &HPolyhedron) -> Self {
        Self {
            d: p.ambient_dim(),
            a: p.rows().iter().map(|r| vector_to_json(&r.normal)).collect(),
            b: p.rows().iter().map(|r| fmt_rat(&r.rhs)).collect(),
            eqs: None,
        }
    }

    pub fn to_polyhedron(&self) -> Result<HPolyhedron, Error> {
        let mut rows = Vec::new();
        let push_block =
            |a: &[Vec<String>], b: &[String], eq: bool, rows: &mut Vec<_>| -> Result<(), Error> {
                if a.len() != b.len() {
                    return Err(Error::Parse(format!(
                        "row count mismatch: {} normals vs {} right-hand sides",
                        a.len(),
                        b.len()
                    )));
                }
                for (normal, rhs) in a.iter().zip(b) {
                    let normal = vector_from_json(normal)?;
                    let rhs = parse_rat(rhs).map_err(Error::Parse)?;
                    if eq {
                        rows.push((-&normal, -&rhs));
                    }
                    rows.push((normal, rhs));
                }
                Ok(())
            };
        push_block(&self.a, &self.b, false, &mut rows)?;
        if let Some(eqs) = &self.eqs {
            push_block(&eqs.a, &eqs.b, true, &mut rows)?;
        }
        HPolyhedron::new(self.d, rows)
    }
}

/// {"active", "dim", "witness"}
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceJson {
    pub active: Vec<usize>,
    pub dim: usize,
    pub witness: Vec<String>,
}

impl FaceJson {
    pub fn from_face(f: &Face) -> Self {
        Self {
            active: f.active.iter().copied().collect(),
            dim: f.dim,
            witness: vector_to_json(&f.relint_witness),
        }
    }
}

/// {"dim", "ineqs": [{"a", "b"}], "eqs": [...]}
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearSystemJson {
    pub dim: usize,
    pub ineqs: Vec<RowJson>,
    pub eqs: Vec<RowJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowJson {
    pub a: Vec<String>,
    pub b: String,
}

impl LinearSystemJson {
    pub fn from_system(s: &LinearSystem) -> Self {
        let row = |r: &crate::lp::Row| RowJson {
            a: vector_to_json(&r.normal),
            b: fmt_rat(&r.rhs),
        };
        Self {
            dim: s.dim(),
            ineqs: s.ineqs().iter().map(row).collect(),
            eqs: s.eqs().iter().map(row).collect(),
        }
    }
}

/// {"point", "phi", "terms": [{"face", "dim", "member"}]}
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiReportJson {
    pub point: Vec<String>,
    pub phi: i64,
    pub terms: Vec<PhiTermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiTermJson {
    pub face: usize,
    pub dim: usize,
    pub member: bool,
}

impl PhiReportJson {
    pub fn from_report(r: &PhiReport) -> Self {
        Self {
            point: vector_to_json(&r.point),
            phi: r.phi,
            terms: r
                .terms
                .iter()
                .map(|&(face, dim, member)| PhiTermJson { face, dim, member })
                .collect(),
        }
    }
}

/// {"predicted", "samples", "violations"}
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReportJson {
    pub predicted: i64,
    pub samples: usize,
    pub violations: Vec<ViolationJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ViolationJson {
    pub point: Vec<String>,
    pub phi: i64,
}

impl VerifyReportJson {
    pub fn from_report(r: &VerifyReport) -> Self {
        Self {
            predicted: r.predicted,
            samples: r.samples,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationJson {
                    point: vector_to_json(&v.point),
                    phi: v.phi,
                })
                .collect(),
        }
    }
}

/// Mirrors GenSpec's fields; kind is "polytope", "cone",
/// "line_free_unbounded", or {"with_lineality": k}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenSpecJson {
    pub seed: u64,
    pub dim: usize,
    pub n_constraints: usize,
    pub kind: GenKindJson,
    #[serde(default = "default_coefficient_bound")]
    pub coefficient_bound: i64,
}

fn default_coefficient_bound() -> i64 {
    8
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKindJson {
    Polytope,
    Cone,
    LineFreeUnbounded,
    WithLineality(usize),
}

impl GenSpecJson {
    pub fn to_spec(&self) -> GenSpec {
        let kind = match self.kind {
            GenKindJson::Polytope => GenKind::Polytope,
            GenKindJson::Cone => GenKind::Cone,
            GenKindJson::LineFreeUnbounded => GenKind::LineFreeUnbounded,
            GenKindJson::WithLineality(k) => GenKind::WithLineality(k),
        };
        GenSpec {
            seed: self.seed,
            dim: self.dim,
            n_constraints: self.n_constraints,
            kind,
            coefficient_bound: self.coefficient_bound,
        }
    }
}

/// Basis vectors of a subspace as rows of rational strings.
pub fn subspace_to_json(b: &SubspaceBasis) -> Vec<Vec<String>> {
    basis_to_json(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::fixtures;

    #[test]
    fn polyhedron_round_trip() {
        let p = fixtures::unit_square();
        let j = PolyhedronJson::from_polyhedron(&p);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"A\""));
        let back: PolyhedronJson = serde_json::from_str(&text).unwrap();
        let q = back.to_polyhedron().unwrap();
        assert_eq!(q.rows().len(), p.rows().len());
        for (a, b) in q.rows().iter().zip(p.rows()) {
            assert_eq!(a.normal, b.normal);
            assert_eq!(a.rhs, b.rhs);
        }
    }

    #[test]
    fn equality_block_expands_to_pairs() {
        let text = r#"{"d":2,"A":[],"b":[],"eqs":{"A":[["0","1"]],"b":["0"]}}"#;
        let j: PolyhedronJson = serde_json::from_str(text).unwrap();
        let p = j.to_polyhedron().unwrap();
        assert_eq!(p.rows().len(), 2);
        assert_eq!(p.poly_dim(), 1);
    }

    #[test]
    fn bad_rational_is_a_parse_error() {
        let text = r#"{"d":1,"A":[["0.5"]],"b":["1"]}"#;
        let j: PolyhedronJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.to_polyhedron(), Err(Error::Parse(_))));
    }

    #[test]
    fn genspec_kind_spellings() {
        let j: GenSpecJson = serde_json::from_str(
            r#"{"seed":1,"dim":3,"n_constraints":4,"kind":{"with_lineality":2}}"#,
        )
        .unwrap();
        assert_eq!(j.to_spec().kind, GenKind::WithLineality(2));
        assert_eq!(j.to_spec().coefficient_bound, 8);
        let j: GenSpecJson = serde_json::from_str(
            r#"{"seed":1,"dim":2,"n_constraints":3,"kind":"polytope","coefficient_bound":5}"#,
        )
        .unwrap();
        assert_eq!(j.to_spec().kind, GenKind::Polytope);
        assert_eq!(j.to_spec().coefficient_bound, 5);
    }
}
