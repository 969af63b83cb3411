//! Command-line front end: generate point sets, analyze their distance
//! spectra, verify distance-set properties and print the reproduction table.

pub mod config;
mod error;
pub mod reproduce;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use neardist::constructions::{generate, maximize_m, MdkWitness};
use neardist::geometry::max_min_ratio;
use neardist::io::{format_pointset, parse_pointset};
use neardist::spectrum::{spectrum_report, turan_number};
use neardist::verification::{
    certify_decomposition, schuette_bound, verify_k_distance_set, verify_weak_eps_k,
    DecompositionTree, DistanceClusters,
};
use neardist::PointSet;
use serde::Serialize;

pub use config::{Check, Command, Job, RunConfig};
pub use error::CliError;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "NEARDIST_THREADS";

/// What a successful run hands back to the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Text for stdout (may be empty).
    pub stdout: String,
    /// Whether every requested check held.
    pub passed: bool,
}

#[derive(Debug, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Verdict {
    KDistance {
        ok: bool,
        k: usize,
        rel_tol: f64,
        distinct: usize,
        clusters: DistanceClusters,
    },
    WeakEps {
        ok: bool,
        eps: f64,
        k: Option<usize>,
        window_count: usize,
        anchors: Vec<f64>,
    },
    Schuette {
        ok: bool,
        dim: usize,
        n: usize,
        ratio: f64,
        bound: f64,
    },
    Certify {
        ok: bool,
        failures: Vec<String>,
        tree: DecompositionTree,
    },
}

impl Verdict {
    pub fn ok(&self) -> bool {
        match self {
            Verdict::KDistance { ok, .. }
            | Verdict::WeakEps { ok, .. }
            | Verdict::Schuette { ok, .. }
            | Verdict::Certify { ok, .. } => *ok,
        }
    }
}

#[derive(Debug, Serialize)]
struct MdkOutput<'a> {
    d: usize,
    k: usize,
    value: u64,
    witness: &'a MdkWitness,
}

/// Sizes the global worker pool from `NEARDIST_THREADS` when set.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(raw) = value else { return Ok(()) };
    let threads: usize = match raw.trim().parse() {
        Ok(t) if t > 0 => t,
        _ => {
            return Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{raw}'"
            )))
        }
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size worker pool: {e}")))
}

/// Path of the metadata sidecar written next to a generated point file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .and_then(|_| tmp.as_file().sync_all())
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn read_points(path: &Path) -> Result<PointSet, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_pointset(&text).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

/// Writes `text` to `out` when given, otherwise returns it for stdout.
fn emit(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => {
            write_atomic(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn verify(points: &PointSet, check: &Check) -> Result<Verdict, CliError> {
    Ok(match *check {
        Check::KDistance { k, rel_tol } => {
            let v = verify_k_distance_set(points, k, rel_tol)?;
            Verdict::KDistance {
                ok: v.ok,
                k,
                rel_tol,
                distinct: v.clusters.len(),
                clusters: v.clusters,
            }
        }
        Check::WeakEps { eps, k } => {
            let cover = verify_weak_eps_k(points, eps)?;
            Verdict::WeakEps {
                ok: k.is_none_or(|k| cover.window_count <= k),
                eps,
                k,
                window_count: cover.window_count,
                anchors: cover.anchors,
            }
        }
        Check::Schuette => {
            let (dim, n) = (points.dim(), points.len());
            if n != dim + 2 {
                return Err(CliError::Usage(format!(
                    "schuette check needs d + 2 = {} points, file has {n}",
                    dim + 2
                )));
            }
            let ratio = max_min_ratio(points)?;
            let bound = schuette_bound(dim)?;
            Verdict::Schuette {
                ok: ratio >= bound - 1e-9,
                dim,
                n,
                ratio,
                bound,
            }
        }
        Check::Certify {
            k,
            eps,
            split_ratio,
        } => {
            let tree = certify_decomposition(points, k, eps, split_ratio)?;
            Verdict::Certify {
                ok: tree.is_certified(),
                failures: tree.failures(),
                tree,
            }
        }
    })
}

/// Validates `config` and executes it.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let job = config.validate()?;
    let mut passed = true;
    let stdout = match job {
        Job::Generate { spec, out } => {
            let g = generate(&spec)?;
            write_atomic(&out, &format_pointset(&g.points))?;
            write_atomic(&sidecar_path(&out), &to_json(&g.meta))?;
            let summary = serde_json::json!({
                "construction": g.meta.construction,
                "points": g.points.len(),
                "dim": g.points.dim(),
                "warnings": g.meta.warnings,
            });
            format!("{summary}\n")
        }
        Job::Analyze {
            input,
            k,
            shape,
            bound,
            out,
        } => {
            let points = read_points(&input)?;
            let report = spectrum_report(&points, k, shape, bound)?;
            emit(to_json(&report), out.as_deref())?
        }
        Job::Verify { input, check, out } => {
            let points = read_points(&input)?;
            let verdict = verify(&points, &check)?;
            passed = verdict.ok();
            emit(to_json(&verdict), out.as_deref())?
        }
        Job::Turan { n, s } => format!("{}\n", turan_number(n, s)?),
        Job::Mdk { d, k, out } => {
            let w = maximize_m(d, k)?;
            let json = to_json(&MdkOutput {
                d,
                k,
                value: w.value,
                witness: &w,
            });
            emit(json, out.as_deref())?
        }
        Job::Reproduce { seed, out } => {
            let rows = reproduce::run_table(seed);
            passed = rows.iter().all(|r| r.passed);
            emit(reproduce::markdown(seed, &rows), out.as_deref())?
        }
    };
    Ok(RunOutcome { stdout, passed })
}
