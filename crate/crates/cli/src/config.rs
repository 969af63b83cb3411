//! Run configuration and its per-command validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use neardist::constructions::{default_eps1, ConstructionSpec, ScaleCascade, DEFAULT_EPS};
use neardist::spectrum::{BoundKind, WindowShape};
use neardist::verification::DEFAULT_SPLIT_RATIO;
use neardist::REL_TOL;

use crate::error::{usage, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Generate,
    Analyze,
    Verify,
    Turan,
    Mdk,
    Reproduce,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::Analyze => "analyze",
            Command::Verify => "verify",
            Command::Turan => "turan",
            Command::Mdk => "mdk",
            Command::Reproduce => "reproduce",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A command with its raw parameters, keyed by flag name without dashes.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: BTreeMap<String, String>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            params: BTreeMap::new(),
            input: None,
            output: None,
            seed: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    KDistance {
        k: usize,
        rel_tol: f64,
    },
    WeakEps {
        eps: f64,
        k: Option<usize>,
    },
    Schuette,
    Certify {
        k: usize,
        eps: f64,
        split_ratio: f64,
    },
}

/// A fully validated unit of work.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Generate {
        spec: ConstructionSpec,
        out: PathBuf,
    },
    Analyze {
        input: PathBuf,
        k: usize,
        shape: WindowShape,
        bound: BoundKind,
        out: Option<PathBuf>,
    },
    Verify {
        input: PathBuf,
        check: Check,
        out: Option<PathBuf>,
    },
    Turan {
        n: u64,
        s: u64,
    },
    Mdk {
        d: usize,
        k: usize,
        out: Option<PathBuf>,
    },
    Reproduce {
        seed: u64,
        out: Option<PathBuf>,
    },
}

struct Params<'a> {
    raw: &'a BTreeMap<String, String>,
}

impl Params<'_> {
    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.raw.get(key) {
            None => Ok(None),
            Some(s) => s
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--{key}: cannot parse '{s}'"))),
        }
    }

    fn need<T: FromStr>(&self, key: &str, why: &str) -> Result<T, CliError> {
        self.get(key)?
            .ok_or_else(|| CliError::Usage(format!("--{key} is required for {why}")))
    }

    fn only(&self, allowed: &[&str], why: &str) -> Result<(), CliError> {
        match self.raw.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => usage(format!("--{k} is not accepted by {why}")),
            None => Ok(()),
        }
    }
}

impl RunConfig {
    /// Checks flags, paths and parameter ranges for the command before any
    /// computation starts.
    pub fn validate(&self) -> Result<Job, CliError> {
        let p = Params { raw: &self.params };
        let cmd = self.command;
        let no_input = || match &self.input {
            Some(_) => usage(format!("--in is not accepted by {cmd}")),
            None => Ok(()),
        };
        let need_input = || {
            self.input
                .clone()
                .ok_or_else(|| CliError::Usage(format!("--in is required for {cmd}")))
        };
        match cmd {
            Command::Generate => {
                no_input()?;
                let out = self
                    .output
                    .clone()
                    .ok_or_else(|| CliError::Usage("--out is required for generate".into()))?;
                Ok(Job::Generate {
                    spec: construction_spec(&p)?,
                    out,
                })
            }
            Command::Analyze => {
                p.only(&["k", "length", "eps", "bound"], "analyze")?;
                let k = positive(p.need("k", "analyze")?, "k")?;
                let shape = match (p.get::<f64>("length")?, p.get::<f64>("eps")?) {
                    (Some(length), None) => WindowShape::Additive { length },
                    (None, Some(eps)) => WindowShape::Multiplicative { eps },
                    _ => return usage("analyze needs exactly one of --length and --eps"),
                };
                shape.validate()?;
                let bound = match p.raw.get("bound").map(|s| s.replace('-', "_")) {
                    None => match shape {
                        WindowShape::Additive { .. } => BoundKind::TuranM,
                        WindowShape::Multiplicative { .. } => BoundKind::TuranDk,
                    },
                    Some(b) if b == "turan_m" => BoundKind::TuranM,
                    Some(b) if b == "turan_dk" => BoundKind::TuranDk,
                    Some(b) => {
                        return usage(format!("--bound must be turan-m or turan-dk, got '{b}'"))
                    }
                };
                Ok(Job::Analyze {
                    input: need_input()?,
                    k,
                    shape,
                    bound,
                    out: self.output.clone(),
                })
            }
            Command::Verify => Ok(Job::Verify {
                input: need_input()?,
                check: check(&p)?,
                out: self.output.clone(),
            }),
            Command::Turan => {
                no_input()?;
                self.no_output()?;
                p.only(&["n", "s"], "turan")?;
                Ok(Job::Turan {
                    n: p.need("n", "turan")?,
                    s: p.need("s", "turan")?,
                })
            }
            Command::Mdk => {
                no_input()?;
                p.only(&["d", "k"], "mdk")?;
                Ok(Job::Mdk {
                    d: p.need("d", "mdk")?,
                    k: p.need("k", "mdk")?,
                    out: self.output.clone(),
                })
            }
            Command::Reproduce => {
                no_input()?;
                p.only(&[], "reproduce")?;
                Ok(Job::Reproduce {
                    seed: self.seed,
                    out: self.output.clone(),
                })
            }
        }
    }

    fn no_output(&self) -> Result<(), CliError> {
        match &self.output {
            Some(_) => usage(format!("--out is not accepted by {}", self.command)),
            None => Ok(()),
        }
    }
}

fn positive(v: usize, key: &str) -> Result<usize, CliError> {
    if v == 0 {
        return usage(format!("--{key} must be at least 1"));
    }
    Ok(v)
}

fn check(p: &Params) -> Result<Check, CliError> {
    let name = p
        .raw
        .get("check")
        .ok_or_else(|| CliError::Usage("--check is required for verify".into()))?;
    match name.as_str() {
        "k-distance" => {
            p.only(&["check", "k", "eps"], "verify --check k-distance")?;
            let rel_tol = p.get("eps")?.unwrap_or(REL_TOL);
            if !(rel_tol >= 0.0 && rel_tol.is_finite()) {
                return usage("--eps (relative tolerance) must be non-negative");
            }
            Ok(Check::KDistance {
                k: positive(p.need("k", "k-distance")?, "k")?,
                rel_tol,
            })
        }
        "weak-eps" => {
            p.only(&["check", "k", "eps"], "verify --check weak-eps")?;
            Ok(Check::WeakEps {
                eps: p.need("eps", "weak-eps")?,
                k: p.get("k")?,
            })
        }
        "schuette" => {
            p.only(&["check"], "verify --check schuette")?;
            Ok(Check::Schuette)
        }
        "certify" => {
            p.only(
                &["check", "k", "eps", "split-ratio"],
                "verify --check certify",
            )?;
            Ok(Check::Certify {
                k: p.need("k", "certify")?,
                eps: p.need("eps", "certify")?,
                split_ratio: p.get("split-ratio")?.unwrap_or(DEFAULT_SPLIT_RATIO),
            })
        }
        other => usage(format!(
            "--check must be k-distance, weak-eps, schuette or certify, got '{other}'"
        )),
    }
}

/// Inner-window width: `--eps1` directly, or derived from the target `--eps`.
fn eps1(p: &Params) -> Result<f64, CliError> {
    match (p.get::<f64>("eps1")?, p.get::<f64>("eps")?) {
        (Some(_), Some(_)) => usage("give at most one of --eps1 and --eps"),
        (Some(e1), None) => Ok(e1),
        (None, eps) => {
            let eps = eps.unwrap_or(DEFAULT_EPS);
            if !(eps > 0.0 && eps <= 1.0) {
                return usage(format!("--eps must lie in (0, 1], got {eps}"));
            }
            Ok(default_eps1(eps))
        }
    }
}

fn construction_spec(p: &Params) -> Result<ConstructionSpec, CliError> {
    let name = p
        .raw
        .get("construction")
        .ok_or_else(|| CliError::Usage("--construction is required for generate".into()))?
        .clone();
    let why = format!("construction {name}");
    let why = why.as_str();
    let allow = |keys: &[&str]| {
        let mut all = vec!["construction"];
        all.extend_from_slice(keys);
        p.only(&all, why)
    };
    let spec = match name.as_str() {
        "regular-simplex" => {
            allow(&["d", "scale"])?;
            ConstructionSpec::RegularSimplex {
                d: p.need("d", why)?,
                edge: p.get("scale")?.unwrap_or(1.0),
            }
        }
        "binomial-simplex" => {
            allow(&["d", "k", "scale"])?;
            ConstructionSpec::BinomialSimplex {
                e: p.need("d", why)?,
                p: p.need("k", why)?,
                lambda: p.get("scale")?.unwrap_or(1.0),
            }
        }
        "progression" => {
            allow(&["k", "scale"])?;
            ConstructionSpec::Progression {
                q: p.need("k", why)?,
                mu: p.get("scale")?.unwrap_or(1.0),
            }
        }
        "two-distance" => {
            allow(&["d"])?;
            ConstructionSpec::TwoDistance {
                d: p.need("d", why)?,
            }
        }
        "product" => {
            allow(&["d", "k", "ratio", "scale"])?;
            let defaults = ScaleCascade::default();
            ConstructionSpec::Product {
                d: p.need("d", why)?,
                k: p.need("k", why)?,
                cascade: ScaleCascade::new(
                    p.get("ratio")?.unwrap_or(defaults.ratio),
                    p.get("scale")?.unwrap_or(defaults.base),
                )?,
            }
        }
        "stacked" => {
            allow(&["d", "n", "scale"])?;
            let n: usize = p.need("n", why)?;
            ConstructionSpec::Stacked {
                d: p.need("d", why)?,
                n,
                scale: p.get("scale")?.unwrap_or((n * n) as f64),
            }
        }
        "simplex-sum" => {
            allow(&["d", "k", "eps", "eps1"])?;
            ConstructionSpec::SimplexSum {
                d: p.need("d", why)?,
                k: p.need("k", why)?,
                eps1: eps1(p)?,
            }
        }
        "clustered-turan" => {
            allow(&["d", "k", "n", "eps", "eps1"])?;
            ConstructionSpec::ClusteredTuran {
                d: p.need("d", why)?,
                k: p.need("k", why)?,
                eps1: eps1(p)?,
                n: p.need("n", why)?,
            }
        }
        "columns" => {
            allow(&["n", "t1", "t2"])?;
            let n: usize = p.need("n", why)?;
            ConstructionSpec::Columns {
                t1: p.get("t1")?.unwrap_or((n * n) as f64),
                t2: p.get("t2")?.unwrap_or(((n + 1) * (n + 1)) as f64),
                n,
            }
        }
        other => {
            return usage(format!(
                "unknown construction '{other}'; expected one of {}",
                CONSTRUCTIONS.join(", ")
            ))
        }
    };
    Ok(spec)
}

pub const CONSTRUCTIONS: [&str; 9] = [
    "regular-simplex",
    "binomial-simplex",
    "progression",
    "two-distance",
    "product",
    "stacked",
    "simplex-sum",
    "clustered-turan",
    "columns",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_config() {
        let job = RunConfig::new(Command::Turan)
            .param("n", 30)
            .param("s", 4)
            .validate()
            .unwrap();
        assert_eq!(job, Job::Turan { n: 30, s: 4 });
    }

    #[test]
    fn rejects_foreign_flags() {
        let err = RunConfig::new(Command::Turan)
            .param("n", 30)
            .param("s", 4)
            .param("eps", 0.1)
            .validate()
            .unwrap_err();
        assert_eq!(err.kind(), "usage");
        assert!(err.to_string().contains("--eps"));
    }

    #[test]
    fn rejects_bad_numbers() {
        let err = RunConfig::new(Command::Mdk)
            .param("d", "three")
            .param("k", 2)
            .validate();
        assert!(err.unwrap_err().to_string().contains("'three'"));
    }

    #[test]
    fn stacked_scale_defaults_to_n_squared() {
        let mut c = RunConfig::new(Command::Generate)
            .param("construction", "stacked")
            .param("d", 2)
            .param("n", 30);
        c.output = Some("x.txt".into());
        match c.validate().unwrap() {
            Job::Generate { spec, .. } => {
                assert_eq!(
                    spec,
                    ConstructionSpec::Stacked {
                        d: 2,
                        n: 30,
                        scale: 900.0
                    }
                )
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn eps1_comes_from_eps() {
        let mut c = RunConfig::new(Command::Generate)
            .param("construction", "simplex-sum")
            .param("d", 2)
            .param("k", 2)
            .param("eps", 0.2);
        c.output = Some("x.txt".into());
        let Job::Generate { spec, .. } = c.clone().validate().unwrap() else {
            panic!()
        };
        assert_eq!(
            spec,
            ConstructionSpec::SimplexSum {
                d: 2,
                k: 2,
                eps1: 0.01
            }
        );
        let both = c.param("eps1", 0.01).validate();
        assert!(both.is_err());
    }

    #[test]
    fn analyze_needs_one_window_shape() {
        let mut c = RunConfig::new(Command::Analyze).param("k", 2);
        c.input = Some("p.txt".into());
        assert!(c.clone().validate().is_err());
        let job = c.clone().param("eps", 0.1).validate().unwrap();
        assert!(matches!(
            job,
            Job::Analyze {
                bound: BoundKind::TuranDk,
                ..
            }
        ));
        let both = c.param("eps", 0.1).param("length", 1.0).validate();
        assert!(both.is_err());
    }

    #[test]
    fn verify_requires_known_check() {
        let mut c = RunConfig::new(Command::Verify).param("check", "magic");
        c.input = Some("p.txt".into());
        assert!(c.validate().is_err());
    }
}
