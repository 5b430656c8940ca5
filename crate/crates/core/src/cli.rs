//! The `component-lattice` command line: parse a spec document, run one
//! computation, print a deterministic JSON report.
//!
//! Exit codes: 0 success, 1 a verified property failed, 2 bad input,
//! 3 an enumeration cap was hit.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::document::SpecDocument;
use crate::linmoduli::{self, LinModError, QuiverSpec};
use crate::qlinalg::{format_rational, parse_rational, QVector, Subspace};
use crate::stackmodel::{self, AttractorSignature, ComponentSignature, Face, QuotientStackSpec, StackError};

pub const CACHE_ENV: &str = "COMPONENT_LATTICE_CACHE";
pub const REPORT_SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "component-lattice",
    version,
    about = "Component lattices of linear quotient and quiver moduli stacks"
)]
struct Cli {
    /// Report cache directory; overrides $COMPONENT_LATTICE_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Output {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Special-face orbits and cells of the global arrangement.
    Faces {
        spec: PathBuf,
        /// Dimension vector, for quiver specs.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Special face and cone closures of a ray or a face.
    Closure {
        spec: PathBuf,
        /// Comma-separated rational coordinates.
        #[arg(long, conflicts_with = "face", required_unless_present = "face")]
        ray: Option<String>,
        /// Images of the basis vectors, rows separated by `;`.
        #[arg(long)]
        face: Option<String>,
    },
    /// Check one family of properties exhaustively or by sampling.
    Verify {
        spec: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        q: u8,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Dimension vector, for quiver specs.
        #[arg(long)]
        gamma: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Constancy,
    Hall,
    Associativity,
    Finiteness,
    Crosscheck,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Constancy => "constancy",
            Suite::Hall => "hall",
            Suite::Associativity => "associativity",
            Suite::Finiteness => "finiteness",
            Suite::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Display) -> CliError {
        CliError {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<StackError> for CliError {
    fn from(e: StackError) -> CliError {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_INPUT };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<LinModError> for CliError {
    fn from(e: LinModError) -> CliError {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_INPUT };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A finished report and whether every checked property held.
struct Outcome {
    results: Value,
    passed: bool,
    seed: Option<u64>,
}

/// Runs the command line given by `args` (including the program name) and
/// returns the exit code with the text for stdout (code 0 or 1) or stderr.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(r) => r,
        Err(e) => (e.code, format!("error: {}\n", e.message)),
    }
}

fn execute(cli: &Cli) -> CliResult<(i32, String)> {
    let Output::Json = cli.output;
    let (name, path) = match &cli.command {
        Command::Faces { spec, .. } => ("faces", spec),
        Command::Closure { spec, .. } => ("closure", spec),
        Command::Verify { spec, .. } => ("verify", spec),
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let doc = SpecDocument::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let canonical = doc.canonical_json();
    let digest = hex::encode(Sha256::digest(canonical.as_bytes()));

    let cache = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let key = hex::encode(Sha256::digest(
        format!(
            "{}\n{name}\n{canonical}\n{}",
            env!("CARGO_PKG_VERSION"),
            command_args(&cli.command)
        )
        .as_bytes(),
    ));
    if let Some(dir) = &cache {
        if let Some(hit) = read_cache(dir, &key) {
            return Ok(hit);
        }
    }

    let outcome = match &cli.command {
        Command::Faces { gamma, .. } => faces(&doc, gamma.as_deref())?,
        Command::Closure { ray, face, .. } => closure(&doc, ray.as_deref(), face.as_deref())?,
        Command::Verify {
            suite,
            samples,
            seed,
            q,
            max_dim,
            gamma,
            ..
        } => verify(&doc, *suite, *samples, *seed, *q, *max_dim, gamma.as_deref())?,
    };
    let mut report = json!({
        "command": name,
        "spec_digest": digest,
        "results": outcome.results,
        "passed": outcome.passed,
        "versions": {
            "component-lattice": env!("CARGO_PKG_VERSION"),
            "report_schema": REPORT_SCHEMA,
        },
    });
    if let Some(seed) = outcome.seed {
        report["seed"] = json!(seed);
    }
    let mut body = serde_json::to_string_pretty(&report).expect("reports serialize");
    body.push('\n');
    let code = if outcome.passed { EXIT_OK } else { EXIT_PROPERTY };
    if let Some(dir) = &cache {
        write_cache(dir, &key, code, &body);
    }
    Ok((code, body))
}

/// The arguments that influence a command's result, in a fixed order.
fn command_args(c: &Command) -> String {
    match c {
        Command::Faces { gamma, .. } => format!("gamma={gamma:?}"),
        Command::Closure { ray, face, .. } => format!("ray={ray:?};face={face:?}"),
        Command::Verify {
            suite,
            samples,
            seed,
            q,
            max_dim,
            gamma,
            ..
        } => format!(
            "suite={};samples={samples};seed={seed};q={q};max_dim={max_dim};gamma={gamma:?}",
            suite.name()
        ),
    }
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Cached entries are the report preceded by a line holding the exit code.
fn read_cache(dir: &Path, key: &str) -> Option<(i32, String)> {
    let text = fs::read_to_string(cache_path(dir, key)).ok()?;
    let (code, body) = text.split_once('\n')?;
    let code: i32 = code.parse().ok()?;
    serde_json::from_str::<Value>(body).ok()?;
    Some((code, body.to_string()))
}

/// Best effort: a failed write only costs a recomputation later.
fn write_cache(dir: &Path, key: &str, code: i32, body: &str) {
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    if fs::write(&tmp, format!("{code}\n{body}")).is_ok() && fs::rename(&tmp, cache_path(dir, key)).is_err() {
        let _ = fs::remove_file(&tmp);
    }
}

fn linear(doc: &SpecDocument) -> CliResult<QuotientStackSpec> {
    match doc {
        SpecDocument::LinearQuotient(d) => Ok(stackmodel::load_spec(d)?),
        SpecDocument::Quiver(_) => Err(CliError::input("this command needs a linear_quotient spec")),
    }
}

fn quiver(doc: &SpecDocument) -> CliResult<QuiverSpec> {
    match doc {
        SpecDocument::Quiver(d) => Ok(QuiverSpec::from_doc(d)?),
        SpecDocument::LinearQuotient(_) => Err(CliError::input("this command needs a quiver spec")),
    }
}

fn parse_gamma(gamma: Option<&str>, quiver: &QuiverSpec) -> CliResult<Vec<usize>> {
    let g = gamma.ok_or_else(|| CliError::input("--gamma is required for quiver specs"))?;
    let dims = g
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::input(format!("--gamma: {e}")))?;
    if dims.len() != quiver.vertex_count() {
        return Err(CliError::input(format!(
            "--gamma has {} entries for {} vertices",
            dims.len(),
            quiver.vertex_count()
        )));
    }
    Ok(dims)
}

fn parse_vector(flag: &str, s: &str, n: usize) -> CliResult<QVector> {
    let v = s
        .split(',')
        .map(|x| {
            parse_rational(x).ok_or_else(|| CliError::input(format!("--{flag}: cannot parse {x:?} as a rational")))
        })
        .collect::<CliResult<QVector>>()?;
    if v.len() != n {
        return Err(CliError::input(format!(
            "--{flag}: expected {n} coordinates, got {}",
            v.len()
        )));
    }
    Ok(v)
}

fn int(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn int_list(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| ints(v)).collect())
}

fn rationals(v: &[crate::qlinalg::Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn subspace(s: &Subspace) -> Value {
    Value::Array(s.basis().iter().map(|b| rationals(b)).collect())
}

fn component(sig: &ComponentSignature) -> Value {
    json!({
        "face_dim": sig.face_dim,
        "fixed_weights": int_list(&sig.fixed_weights),
        "levi_roots": int_list(&sig.levi_roots),
    })
}

fn attractor(sig: &AttractorSignature) -> Value {
    json!({
        "face": subspace(&sig.face),
        "bounds": sig.cone.bounds(),
        "dim": sig.cone.dim(),
        "extreme_rays": int_list(&sig.rays),
        "lineality": int_list(&sig.lineality),
        "attractor_weights": int_list(&sig.attractor_weights),
        "parabolic_roots": int_list(&sig.parabolic_roots),
        "levi": component(&sig.levi_part),
    })
}

fn class_tuples(tuples: &[linmoduli::ClassTuple]) -> Value {
    Value::Array(tuples.iter().map(|t| json!(t.classes)).collect())
}

fn faces(doc: &SpecDocument, gamma: Option<&str>) -> CliResult<Outcome> {
    if let SpecDocument::Quiver(_) = doc {
        let q = quiver(doc)?;
        let dims = parse_gamma(gamma, &q)?;
        let tuples = linmoduli::special_faces_lms(&q, &dims)?;
        return Ok(Outcome {
            results: json!({ "gamma": dims, "face_count": tuples.len(), "faces": class_tuples(&tuples) }),
            passed: true,
            seed: None,
        });
    }
    let spec = linear(doc)?;
    let orbits = stackmodel::enumerate_special_faces(&spec)?;
    let (cells, cell_orbits) = stackmodel::cell_orbits(&spec)?;
    let faces: Vec<Value> = orbits
        .iter()
        .map(|o| {
            json!({
                "dim": o.dim(),
                "orbit_size": o.orbit_size(),
                "representative": subspace(&o.representative.subspace),
                "hyperplanes": o.representative.containing_hyperplanes,
                "signature": component(&o.signature),
            })
        })
        .collect();
    let per_orbit: Vec<Value> = cell_orbits
        .iter()
        .map(|c| json!({ "representative": c.representative.to_string(), "dim": c.dim, "size": c.members.len() }))
        .collect();
    Ok(Outcome {
        results: json!({
            "face_orbit_count": orbits.len(),
            "face_orbits": faces,
            "hyperplanes": spec.global_arrangement().covectors().iter().map(|c| ints(c.entries())).collect::<Vec<_>>(),
            "cells": { "total": cells.len(), "orbit_count": cell_orbits.len(), "orbits": per_orbit },
        }),
        passed: true,
        seed: None,
    })
}

fn closure(doc: &SpecDocument, ray: Option<&str>, face: Option<&str>) -> CliResult<Outcome> {
    let spec = linear(doc)?;
    let n = spec.rank();
    let (face, rays) = match (ray, face) {
        (Some(r), _) => {
            let v = parse_vector("ray", r, n)?;
            (Face::ray(v.clone()), vec![v])
        }
        (None, Some(m)) => {
            let images = m
                .split(';')
                .map(|row| parse_vector("face", row, n))
                .collect::<CliResult<Vec<QVector>>>()?;
            let mut rays = images.clone();
            rays.extend(images.iter().map(|v| v.iter().map(|x| -x).collect::<QVector>()));
            (Face::Map { images, ambient_dim: n }, rays)
        }
        (None, None) => return Err(CliError::input("one of --ray or --face is required")),
    };
    let flat = stackmodel::special_face_closure(&spec, &face)?;
    let cone = stackmodel::special_cone_closure(&spec, &rays)?;
    Ok(Outcome {
        results: json!({
            "input": face.images().iter().map(|v| rationals(v)).collect::<Vec<_>>(),
            "special_face_closure": subspace(&flat.subspace),
            "central_rank": stackmodel::central_rank(&spec, &face)?,
            "component_signature": component(&stackmodel::component_signature(&spec, &face)?),
            "special_cone_closure": attractor(&cone),
        }),
        passed: true,
        seed: None,
    })
}

fn verify(
    doc: &SpecDocument,
    suite: Suite,
    samples: usize,
    seed: u64,
    q: u8,
    max_dim: usize,
    gamma: Option<&str>,
) -> CliResult<Outcome> {
    let outcome = match (suite, doc) {
        (Suite::Constancy, _) => {
            let spec = linear(doc)?;
            let mut faces = Vec::new();
            let mut passed = true;
            for orbit in stackmodel::enumerate_special_faces(&spec)? {
                let face = &orbit.representative.subspace;
                if face.dim() == 0 {
                    continue;
                }
                let r = stackmodel::constancy_check(&spec, face, samples, seed)?;
                passed &= r.passed();
                let chambers: Vec<Value> = r
                    .chambers
                    .iter()
                    .map(|c| {
                        json!({
                            "chamber": c.chamber.to_string(),
                            "witness": rationals(&c.witness),
                            "samples": c.samples,
                            "rejected": c.rejected,
                            "discrepancies": c.discrepancies,
                            "counterexample": c.counterexample.as_ref().map(|p| rationals(p)),
                            "component": component(&c.component),
                            "attractor": attractor(&c.attractor),
                        })
                    })
                    .collect();
                faces.push(json!({ "face": subspace(face), "passed": r.passed(), "chambers": chambers }));
            }
            Outcome {
                results: json!({ "suite": "constancy", "faces": faces }),
                passed,
                seed: Some(seed),
            }
        }
        (Suite::Hall | Suite::Associativity, SpecDocument::LinearQuotient(_)) => {
            let spec = linear(doc)?;
            let cat = stackmodel::hall_category(&spec)?;
            let r = cat.check_associativity();
            Outcome {
                results: json!({
                    "suite": suite.name(),
                    "objects": cat.objects.len(),
                    "morphisms": cat.morphisms.len(),
                    "triples": r.triples,
                    "failures": r.failures,
                    "unit_failures": r.unit_failures,
                }),
                passed: r.passed(),
                seed: None,
            }
        }
        (Suite::Hall, SpecDocument::Quiver(_)) => {
            let qv = quiver(doc)?;
            let r = linmoduli::verify_hall_associativity(&qv, q, max_dim)?;
            let alg = linmoduli::HallAlgebra::new(&qv, q, max_dim)?;
            let classes = alg.all_classes();
            let mut table = Vec::new();
            for a in &classes {
                for b in &classes {
                    if a.dims.iter().chain(&b.dims).sum::<usize>() > max_dim {
                        continue;
                    }
                    let p = alg.product(
                        &linmoduli::HallElement::delta(a.clone()),
                        &linmoduli::HallElement::delta(b.clone()),
                    )?;
                    table.push(json!({ "left": a.to_string(), "right": b.to_string(), "product": p.to_strings() }));
                }
            }
            Outcome {
                results: json!({
                    "suite": "hall",
                    "q": q,
                    "max_dim": max_dim,
                    "convention": "(f*g)(R) = sum over S <= R of f(R/S) g(S)",
                    "classes": classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "triples": r.triples,
                    "flag_checks": r.flag_checks,
                    "unit_checks": r.unit_checks,
                    "failures": r.failures,
                    "table": table,
                }),
                passed: r.passed(),
                seed: None,
            }
        }
        (Suite::Associativity, SpecDocument::Quiver(_)) => {
            let qv = quiver(doc)?;
            let bound = parse_gamma(gamma, &qv)?;
            let cat = linmoduli::hall_category_lms(&qv, &bound)?;
            let (triples, failures) = cat.check_associativity();
            Outcome {
                results: json!({
                    "suite": "associativity",
                    "gamma": bound,
                    "objects": cat.objects.len(),
                    "morphisms": cat.morphisms.len(),
                    "triples": triples,
                    "failures": failures,
                    "identification_sensitive": cat.identification_sensitive,
                }),
                passed: failures.is_empty(),
                seed: None,
            }
        }
        (Suite::Finiteness, SpecDocument::LinearQuotient(_)) => {
            let spec = linear(doc)?;
            let orbits = stackmodel::enumerate_special_faces(&spec)?;
            let mut by_dim = std::collections::BTreeMap::new();
            for o in &orbits {
                *by_dim.entry(o.dim().to_string()).or_insert(0usize) += 1;
            }
            Outcome {
                results: json!({ "suite": "finiteness", "face_orbit_count": orbits.len(), "by_dim": by_dim }),
                passed: true,
                seed: None,
            }
        }
        (Suite::Finiteness, SpecDocument::Quiver(_)) => {
            let qv = quiver(doc)?;
            let dims = parse_gamma(gamma, &qv)?;
            let tuples = linmoduli::special_faces_lms(&qv, &dims)?;
            Outcome {
                results: json!({ "suite": "finiteness", "gamma": dims, "face_count": tuples.len(), "faces": class_tuples(&tuples) }),
                passed: true,
                seed: None,
            }
        }
        (Suite::Crosscheck, _) => {
            let qv = quiver(doc)?;
            let dims = parse_gamma(gamma, &qv)?;
            let c = linmoduli::cross_check_special_faces(&qv, &dims)?;
            let keyed = |m: &std::collections::BTreeMap<usize, usize>| -> Value {
                m.iter()
                    .map(|(k, v)| (k.to_string(), json!(v)))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            };
            Outcome {
                results: json!({
                    "suite": "crosscheck",
                    "gamma": dims,
                    "stack_orbits_by_dim": keyed(&c.stack_orbits),
                    "tuples_by_length": keyed(&c.tuples),
                    "stack_orbit_count": c.stack_orbits.values().sum::<usize>(),
                    "tuple_count": c.tuples.values().sum::<usize>(),
                }),
                passed: c.agrees(),
                seed: None,
            }
        }
    };
    Ok(outcome)
}
