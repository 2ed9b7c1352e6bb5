//! Single-binary command-line surface: every operation as a JSON-in/JSON-out
//! subcommand. Exit codes: 0 success, 1 identity violation found, 2 input or
//! usage error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::exactmath::{fmt_rat, parse_rat, RVector};
use crate::harness::{self, GenKind, GenSpec};
use crate::identity::{PhiEvaluator, VerifyConfig};
use crate::json::{
    subspace_to_json, vector_to_json, FaceJson, PhiReportJson, PolyhedronJson, VerifyReportJson,
};
use crate::polyhedron::HPolyhedron;
use crate::Error;

const DEFAULT_MAX_DIM: usize = 8;

#[derive(Parser)]
#[command(name = "normalfan", version, about = "Exact evaluation of the signed normal-fan indicator sum of H-polyhedra")]
struct Cli {
    /// Output format; json is stable, pretty is for humans.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the face lattice, sorted by (dim, active set).
    Faces { input: PathBuf },
    /// List every face with its normal cone generators and lineality basis.
    NormalFan { input: PathBuf },
    /// Evaluate the signed indicator sum at a point.
    Phi {
        input: PathBuf,
        /// Comma-separated rationals, e.g. "2,1/2".
        #[arg(long)]
        point: String,
    },
    /// Sample points (random + boundary strata) and check the constant.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Alternating face-count sum of a cone.
    Euler { input: PathBuf },
    /// Lineality decomposition P = P0 + U_P and the predicted constant.
    Decompose { input: PathBuf },
    /// The unique face with point in relint F + N(P,F), and the split.
    Covering {
        input: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Exact nearest point of P.
    Project {
        input: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// The piecewise reflection x + u -> x - u.
    Psi {
        input: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Topological degree of the reflection at a regular point.
    Degree {
        input: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Boundary strata (G, H) containing the point.
    Strata {
        input: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Localized cone H* and face map for a face pair.
    Localize {
        input: PathBuf,
        /// Face id of G (as listed by `faces`).
        #[arg(long)]
        g: usize,
        /// Face id of H.
        #[arg(long)]
        h: usize,
    },
    /// Generate a deterministic random instance.
    Gen {
        /// polytope | cone | line_free_unbounded | with_lineality:K
        #[arg(long)]
        kind: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n_constraints: usize,
        #[arg(long, default_value_t = 8)]
        coefficient_bound: i64,
    },
    /// Verify every .json instance in a directory.
    VerifyCorpus { dir: PathBuf },
}

/// Runs the CLI on the given argv and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful terminations
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(RunError::Violation(msg)) => {
            eprintln!("identity violation: {msg}");
            1
        }
        Err(RunError::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

enum RunError {
    /// An identity the artifact exists to check failed (exit 1).
    Violation(String),
    /// Bad input or usage (exit 2).
    Input(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::CoverViolation { .. }
            | Error::TheoremViolation { .. }
            | Error::StratumMismatch(_) => RunError::Violation(e.to_string()),
            other => RunError::Input(other.to_string()),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), RunError> {
    match &cli.cmd {
        Cmd::Faces { input } => {
            let e = load(input)?;
            #[derive(Serialize)]
            struct Out {
                faces: Vec<FaceJson>,
            }
            let out = Out {
                faces: e.lattice().faces().iter().map(FaceJson::from_face).collect(),
            };
            emit(cli.format, &out, |o| {
                o.faces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        format!(
                            "face {i}: dim {} active {:?} witness ({})",
                            f.dim,
                            f.active,
                            f.witness.join(", ")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Cmd::NormalFan { input } => {
            let e = load(input)?;
            #[derive(Serialize)]
            struct Entry {
                face: usize,
                dim: usize,
                generators: Vec<Vec<String>>,
                lineality: Vec<Vec<String>>,
            }
            #[derive(Serialize)]
            struct Out {
                fan: Vec<Entry>,
            }
            let out = Out {
                fan: e
                    .lattice()
                    .iter()
                    .map(|(id, f)| {
                        let c = e.normal_cone_of(id);
                        Entry {
                            face: id,
                            dim: f.dim,
                            generators: c.generators().iter().map(vector_to_json).collect(),
                            lineality: subspace_to_json(c.lineality()),
                        }
                    })
                    .collect(),
            };
            emit(cli.format, &out, |o| {
                o.fan
                    .iter()
                    .map(|en| {
                        format!(
                            "face {} (dim {}): {} generators, lineality dim {}",
                            en.face,
                            en.dim,
                            en.generators.len(),
                            en.lineality.len()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Cmd::Phi { input, point } => {
            let e = load(input)?;
            let x = parse_point(&e, point)?;
            let out = PhiReportJson::from_report(&e.phi_at(&x));
            emit(cli.format, &out, |o| format!("phi = {}", o.phi))
        }
        Cmd::Verify {
            input,
            samples,
            seed,
        } => {
            let e = load(input)?;
            let report = e.verify_theorem(&VerifyConfig {
                samples: *samples,
                seed: *seed,
            })?;
            let out = VerifyReportJson::from_report(&report);
            emit(cli.format, &out, |o| {
                format!(
                    "predicted {} verified on {} samples, {} violations",
                    o.predicted,
                    o.samples,
                    o.violations.len()
                )
            })
        }
        Cmd::Euler { input } => {
            let e = load(input)?;
            #[derive(Serialize)]
            struct Out {
                sum: i64,
            }
            let out = Out {
                sum: e.euler_sum()?,
            };
            emit(cli.format, &out, |o| format!("euler sum = {}", o.sum))
        }
        Cmd::Decompose { input } => {
            let e = load(input)?;
            let d = e.decomposition();
            #[derive(Serialize)]
            struct Out {
                u_basis: Vec<Vec<String>>,
                p0: PolyhedronJson,
                p0_bounded: bool,
                predicted_phi: i64,
            }
            let out = Out {
                u_basis: subspace_to_json(&d.u_basis),
                p0: PolyhedronJson::from_polyhedron(&d.p0),
                p0_bounded: d.p0_bounded,
                predicted_phi: d.predicted_phi,
            };
            emit(cli.format, &out, |o| {
                format!(
                    "dim U_P = {}, P0 {}, predicted phi = {}",
                    o.u_basis.len(),
                    if o.p0_bounded { "bounded" } else { "unbounded" },
                    o.predicted_phi
                )
            })
        }
        Cmd::Covering { input, point } => {
            let e = load(input)?;
            let y = parse_point(&e, point)?;
            let w = e.covering_witness(&y)?;
            #[derive(Serialize)]
            struct Out {
                face: usize,
                x: Vec<String>,
                u: Vec<String>,
            }
            let out = Out {
                face: w.face,
                x: vector_to_json(&w.x),
                u: vector_to_json(&w.u),
            };
            emit(cli.format, &out, |o| {
                format!(
                    "face {} with x = ({}) and u = ({})",
                    o.face,
                    o.x.join(", "),
                    o.u.join(", ")
                )
            })
        }
        Cmd::Project { input, point } => {
            let e = load(input)?;
            let y = parse_point(&e, point)?;
            let p = e.project_onto(&y)?;
            emit_point(cli.format, &p)
        }
        Cmd::Psi { input, point } => {
            let e = load(input)?;
            let y = parse_point(&e, point)?;
            let p = e.psi(&y)?;
            emit_point(cli.format, &p)
        }
        Cmd::Degree { input, point } => {
            let e = load(input)?;
            let z = parse_point(&e, point)?;
            let degree = e.degree_at(&z);
            #[derive(Serialize)]
            struct Out {
                regular: bool,
                degree: Option<i64>,
            }
            let out = Out {
                regular: degree.is_some(),
                degree,
            };
            emit(cli.format, &out, |o| match o.degree {
                Some(d) => format!("degree = {d}"),
                None => "non-regular point".into(),
            })
        }
        Cmd::Strata { input, point } => {
            let e = load(input)?;
            let x = parse_point(&e, point)?;
            #[derive(Serialize)]
            struct Entry {
                g: usize,
                h: usize,
            }
            #[derive(Serialize)]
            struct Out {
                strata: Vec<Entry>,
            }
            let out = Out {
                strata: e
                    .strata_at(&x)
                    .iter()
                    .map(|s| Entry { g: s.g, h: s.h })
                    .collect(),
            };
            emit(cli.format, &out, |o| {
                if o.strata.is_empty() {
                    "regular point: no strata".into()
                } else {
                    o.strata
                        .iter()
                        .map(|s| format!("(G = face {}, H = face {})", s.g, s.h))
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            })
        }
        Cmd::Localize { input, g, h } => {
            let e = load(input)?;
            if *g >= e.lattice().len() || *h >= e.lattice().len() {
                return Err(RunError::Input("face id out of range".into()));
            }
            let local = e.localize(*g, *h)?;
            #[derive(Serialize)]
            struct MapEntry {
                face: usize,
                star_active: Vec<usize>,
            }
            #[derive(Serialize)]
            struct Out {
                base_point: Vec<String>,
                l3: Vec<Vec<String>>,
                hstar: PolyhedronJson,
                face_map: Vec<MapEntry>,
                safe_radius: String,
            }
            let out = Out {
                base_point: vector_to_json(&local.base_point),
                l3: subspace_to_json(&local.l3),
                hstar: PolyhedronJson::from_polyhedron(&local.hstar),
                face_map: local
                    .face_map
                    .iter()
                    .map(|(f, active)| MapEntry {
                        face: *f,
                        star_active: active.iter().copied().collect(),
                    })
                    .collect(),
                safe_radius: fmt_rat(&e.safe_radius(*g)),
            };
            emit(cli.format, &out, |o| {
                format!(
                    "localized at ({}): dim L3 = {}, {} interval faces, safe radius {}",
                    o.base_point.join(", "),
                    o.l3.len(),
                    o.face_map.len(),
                    o.safe_radius
                )
            })
        }
        Cmd::Gen {
            kind,
            dim,
            seed,
            n_constraints,
            coefficient_bound,
        } => {
            check_dim(*dim)?;
            let kind = parse_kind(kind)?;
            let spec = GenSpec {
                seed: *seed,
                dim: *dim,
                n_constraints: *n_constraints,
                kind,
                coefficient_bound: *coefficient_bound,
            };
            let p = harness::gen_instance(&spec)?;
            let out = PolyhedronJson::from_polyhedron(&p);
            emit(cli.format, &out, |o| {
                format!("generated instance with {} rows in dimension {}", o.a.len(), o.d)
            })
        }
        Cmd::VerifyCorpus { dir } => {
            #[derive(Serialize)]
            struct Entry {
                file: String,
                predicted: i64,
                samples: usize,
            }
            #[derive(Serialize)]
            struct Out {
                instances: usize,
                results: Vec<Entry>,
            }
            let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
                .map_err(|e| RunError::Input(format!("cannot read {}: {e}", dir.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(RunError::Input(format!(
                    "no .json instances in {}",
                    dir.display()
                )));
            }
            let mut results = Vec::new();
            for file in &files {
                let e = load(file)?;
                let report = e.verify_theorem(&VerifyConfig {
                    samples: 16,
                    seed: 0,
                })?;
                results.push(Entry {
                    file: file
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default(),
                    predicted: report.predicted,
                    samples: report.samples,
                });
            }
            let out = Out {
                instances: results.len(),
                results,
            };
            emit(cli.format, &out, |o| {
                format!("verified {} instances, no violations", o.instances)
            })
        }
    }
}

fn max_dim() -> usize {
    std::env::var("NORMALFAN_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

fn check_dim(d: usize) -> Result<(), RunError> {
    let cap = max_dim();
    if d > cap {
        return Err(RunError::Input(format!(
            "dimension {d} exceeds the cap {cap} (set NORMALFAN_MAX_DIM to raise it)"
        )));
    }
    Ok(())
}

fn load(path: &Path) -> Result<PhiEvaluator, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read {}: {e}", path.display())))?;
    let json: PolyhedronJson = serde_json::from_str(&text)
        .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))?;
    check_dim(json.d)?;
    let p: HPolyhedron = json.to_polyhedron()?;
    Ok(PhiEvaluator::new(p))
}

fn parse_point(e: &PhiEvaluator, literal: &str) -> Result<RVector, RunError> {
    let entries = literal
        .split(',')
        .map(|s| parse_rat(s).map_err(RunError::Input))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != e.polyhedron().ambient_dim() {
        return Err(RunError::Input(format!(
            "point has {} coordinates, instance has dimension {}",
            entries.len(),
            e.polyhedron().ambient_dim()
        )));
    }
    Ok(RVector::new(entries))
}

fn parse_kind(s: &str) -> Result<GenKind, RunError> {
    match s {
        "polytope" => Ok(GenKind::Polytope),
        "cone" => Ok(GenKind::Cone),
        "line_free_unbounded" => Ok(GenKind::LineFreeUnbounded),
        other => {
            if let Some(k) = other.strip_prefix("with_lineality:") {
                let k: usize = k
                    .parse()
                    .map_err(|_| RunError::Input(format!("bad lineality count in {other:?}")))?;
                Ok(GenKind::WithLineality(k))
            } else {
                Err(RunError::Input(format!(
                    "unknown kind {other:?}; expected polytope, cone, line_free_unbounded, or with_lineality:K"
                )))
            }
        }
    }
}

fn emit<T: Serialize>(
    format: Format,
    value: &T,
    pretty: impl FnOnce(&T) -> String,
) -> Result<(), RunError> {
    use std::io::Write;
    let text = match format {
        Format::Json => serde_json::to_string(value)
            .map_err(|e| RunError::Input(format!("serialization failed: {e}")))?,
        Format::Pretty => pretty(value),
    };
    // ignore a closed pipe (e.g. output truncated by `head`)
    let _ = writeln!(std::io::stdout(), "{text}");
    Ok(())
}

fn emit_point(format: Format, p: &RVector) -> Result<(), RunError> {
    #[derive(Serialize)]
    struct Out {
        point: Vec<String>,
    }
    let out = Out {
        point: vector_to_json(p),
    };
    emit(format, &out, |o| format!("({})", o.point.join(", ")))
}
