//! Run configuration, verification suites and report emission.

mod checks;

use crate::fields::{CMExtension, FieldDescriptor};
use crate::lattices::{HermitianLattice, LatticeFile};
use crate::weilrep::{cm_newform, NewformData};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub use checks::random_hermitian_gram;

pub const BUNDLED_FIELDS: [(&str, &str); 2] = [
    ("d7_sqrt5", include_str!("../../data/fields/d7_sqrt5.json")),
    ("d7_cubic81", include_str!("../../data/fields/d7_cubic81.json")),
];

pub const BUNDLED_LATTICES: [(&str, &str); 3] = [
    ("d7_rank2", include_str!("../../data/lattices/d7_rank2.json")),
    ("d7_rank3", include_str!("../../data/lattices/d7_rank3.json")),
    ("d11_rank2", include_str!("../../data/lattices/d11_rank2.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lattice,
    Weilrep,
    Lfun,
    Convolution,
    Eisenstein,
    Heights,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Lattice, Suite::Weilrep, Suite::Lfun, Suite::Convolution, Suite::Eisenstein, Suite::Heights];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Weilrep => "weilrep",
            Suite::Lfun => "lfun",
            Suite::Convolution => "convolution",
            Suite::Eisenstein => "eisenstein",
            Suite::Heights => "heights",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

/// Inline JSON or a path relative to the config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    File { file: PathBuf },
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase", deny_unknown_fields)]
pub enum NewformSource {
    /// Weight-n CM newform of level D generated from the first lattice's field.
    Internal { weight: u32 },
    /// CSV with header (m, re, im).
    Csv { path: PathBuf, weight: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Precision {
    /// Coefficients of the newform table.
    pub newform_prec: usize,
    /// m range of the coset-twist identity.
    pub coset_mmax: u64,
    /// m range of the scalar/vector identity and the induction checks.
    pub identity_mmax: i64,
    /// Norm bound for the rho brute force.
    pub rho_bound: u64,
    /// Class number formula for odd fundamental D below this bound.
    pub class_number_dmax: u64,
    /// Largest discriminant module used in the Weil relation check.
    pub weil_max_order: usize,
    pub hasse_samples: usize,
    pub diff_samples: usize,
    /// Ideal-series cutoff; `null` uses the default.
    pub lfun_cutoff: Option<u64>,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            newform_prec: 400,
            coset_mmax: 60,
            identity_mmax: 30,
            rho_bound: 500,
            class_number_dmax: 500,
            weil_max_order: 343,
            hasse_samples: 100,
            diff_samples: 1000,
            lfun_cutoff: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub weil: f64,
    pub lfun: f64,
    pub identity: f64,
    pub chowla: f64,
    pub heights: f64,
    pub euler_fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { weil: 1e-12, lfun: 1e-8, identity: 1e-10, chowla: 1e-8, heights: 1e-10, euler_fd: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub fields: Vec<Source<FieldDescriptor>>,
    /// The first lattice is Lambda for the induction pipeline; all are used by the coset identity.
    pub lattices: Vec<Source<LatticeFile>>,
    pub newform: NewformSource,
    pub precision: Precision,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Runtimes make the JSON report run-dependent, so they are off by default.
    pub record_runtime: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut fields: Vec<Source<FieldDescriptor>> = BUNDLED_FIELDS
            .iter()
            .map(|(_, t)| Source::Inline(FieldDescriptor::parse(t).expect("bundled field")))
            .collect();
        for (d, poly) in [(11u64, vec![-1i128, -1, 1]), (7, vec![-3, -1, 1])] {
            let text = format!(r#"{{"k": {{"D": {d}}}, "F": {{"min_poly": {poly:?}}}}}"#);
            fields.push(Source::Inline(FieldDescriptor::parse(&text).expect("field")));
        }
        RunConfig {
            fields,
            lattices: BUNDLED_LATTICES
                .iter()
                .map(|(_, t)| Source::Inline(LatticeFile::parse(t).expect("bundled lattice")))
                .collect(),
            newform: NewformSource::Internal { weight: 3 },
            precision: Precision::default(),
            tolerances: Tolerances::default(),
            seed: 0,
            suites: vec![Suite::All],
            record_runtime: false,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed config: {e}")))
    }

    /// Reads a config and resolves relative paths against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut c = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for f in &mut c.fields {
            if let Source::File { file } = f {
                fix(file);
            }
        }
        for l in &mut c.lattices {
            if let Source::File { file } = l {
                fix(file);
            }
        }
        if let NewformSource::Csv { path, .. } = &mut c.newform {
            fix(path);
        }
        Ok(c)
    }

    /// SHA-256 of the canonical JSON serialization.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn expanded_suites(&self) -> Vec<Suite> {
        let mut out: Vec<Suite> = Vec::new();
        for s in &self.suites {
            let add: Vec<Suite> = if *s == Suite::All { Suite::ALL.to_vec() } else { vec![*s] };
            for x in add {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }
}

fn read_source<T: for<'de> Deserialize<'de> + Clone>(s: &Source<T>, what: &str) -> Result<T> {
    match s {
        Source::Inline(t) => Ok(t.clone()),
        Source::File { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Config(format!("missing {what} file {}: {e}", file.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("malformed {what} file {}: {e}", file.display())))
        }
    }
}

/// Reads a newform CSV; a c(1) != 1 warning is returned alongside.
pub fn ingest_newform(path: &Path, weight: u32, level: u64) -> Result<(NewformData, Option<String>)> {
    let f = std::fs::File::open(path)
        .map_err(|e| Error::Config(format!("missing newform file {}: {e}", path.display())))?;
    NewformData::read_csv(f, weight, level)
}

/// Everything the checks need, built once from a config.
pub struct Context {
    pub config: RunConfig,
    pub fields: Vec<(String, CMExtension)>,
    pub lattices: Vec<(String, HermitianLattice)>,
    pub newform: NewformData,
    pub warnings: Vec<String>,
}

impl Context {
    pub fn build(config: &RunConfig) -> Result<Self> {
        let cfg_err = |what: &str, e: Error| match e {
            Error::Config(_) => e,
            other => Error::Config(format!("{what}: {other}")),
        };
        let mut fields = Vec::new();
        for (i, s) in config.fields.iter().enumerate() {
            let d = read_source(s, "field")?;
            let e = d.build().map_err(|e| cfg_err(&format!("field #{i}"), e))?;
            fields.push((format!("D={} F={:?}", d.k.d, d.f.min_poly), e));
        }
        let mut lattices = Vec::new();
        for (i, s) in config.lattices.iter().enumerate() {
            let lf = read_source(s, "lattice")?;
            let l = lf.build().map_err(|e| cfg_err(&format!("lattice #{i}"), e))?;
            lattices.push((format!("D={} rank {}", lf.d, l.m), l));
        }
        let level = lattices.first().map(|l| l.1.k.d);
        let mut warnings = Vec::new();
        let newform = match (&config.newform, level) {
            (_, None) => return Err(Error::Config("at least one lattice is required".into())),
            (NewformSource::Internal { weight }, Some(_)) => {
                let k = &lattices[0].1.k;
                cm_newform(k, *weight, config.precision.newform_prec).map_err(|e| cfg_err("newform", e))?
            }
            (NewformSource::Csv { path, weight }, Some(d)) => {
                let (g, w) = ingest_newform(path, *weight, d)?;
                warnings.extend(w);
                g
            }
        };
        Ok(Context { config: config.clone(), fields, lattices, newform, warnings })
    }

    pub fn biquadratic(&self) -> impl Iterator<Item = &(String, CMExtension)> {
        self.fields.iter().filter(|f| f.1.n() == 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be evaluated; counted as a failure.
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub suite: Suite,
    pub description: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    /// First offending input on failure, or a short summary.
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_s: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config_hash: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!("unknown format '{s}' (json, text, csv)"))),
        }
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into())
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "config {}", self.config_hash);
        for c in &self.checks {
            let _ = write!(
                s,
                "{:<5} {:<12} {:<32} residual {:>10} tol {:>10}",
                c.status.label(),
                c.suite.name(),
                c.name,
                fmt_opt(c.residual),
                fmt_opt(c.tolerance)
            );
            if let Some(t) = c.runtime_s {
                let _ = write!(s, "  {t:.2}s");
            }
            let _ = writeln!(s, "\n      {}", c.description);
            if let Some(d) = &c.detail {
                let _ = writeln!(s, "      {d}");
            }
        }
        let n_fail = self.failures().count();
        let _ = writeln!(s, "{} checks, {} failed", self.checks.len(), n_fail);
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "suite", "status", "residual", "tolerance", "runtime_s", "description", "detail"])?;
        let o = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
        for c in &self.checks {
            w.write_record([
                c.name.clone(),
                c.suite.name().into(),
                c.status.label().into(),
                o(c.residual),
                o(c.tolerance),
                o(c.runtime_s),
                c.description.clone(),
                c.detail.clone().unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("utf8"))
    }
}

/// Runs the selected suites; `None` uses the suites named in the config.
/// Configuration problems are errors, check failures are records.
pub fn run_suite(config: &RunConfig, suites: Option<&[Suite]>) -> Result<VerificationReport> {
    let mut cfg = config.clone();
    if let Some(s) = suites {
        cfg.suites = s.to_vec();
    }
    let selected = cfg.expanded_suites();
    let hash = cfg.hash();
    if selected.is_empty() {
        return Ok(VerificationReport { config_hash: hash, passed: true, checks: Vec::new() });
    }
    let ctx = Context::build(&cfg)?;
    let list: Vec<&checks::Check> = checks::CHECKS.iter().filter(|c| selected.contains(&c.suite)).collect();
    let records: Vec<CheckRecord> = list
        .par_iter()
        .map(|c| {
            let t0 = Instant::now();
            let out = (c.run)(&ctx);
            let runtime = cfg.record_runtime.then(|| t0.elapsed().as_secs_f64());
            let (status, residual, tolerance, detail) = match out {
                Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.residual, o.tolerance, o.detail),
                Err(e) => (Status::Error, None, None, Some(e.to_string())),
            };
            CheckRecord {
                name: c.name.into(),
                suite: c.suite,
                description: c.description.into(),
                status,
                residual,
                tolerance,
                detail,
                runtime_s: runtime,
            }
        })
        .collect();
    let mut records = records;
    // declaration order within suite order
    records.sort_by_key(|r| selected.iter().position(|s| *s == r.suite));
    let passed = records.iter().all(|r| r.status == Status::Pass);
    Ok(VerificationReport { config_hash: hash, passed, checks: records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_config() -> RunConfig {
        let mut c = RunConfig::default();
        c.precision.coset_mmax = 12;
        c.precision.identity_mmax = 8;
        c.precision.rho_bound = 80;
        c.precision.class_number_dmax = 100;
        c.precision.hasse_samples = 10;
        c.precision.diff_samples = 40;
        c.precision.newform_prec = 120;
        c.fields.truncate(2);
        c
    }

    #[test]
    fn empty_selection() {
        let r = run_suite(&RunConfig::default(), Some(&[])).unwrap();
        assert!(r.passed);
        assert!(r.checks.is_empty());
    }

    #[test]
    fn config_defaults_and_hash() {
        let c = RunConfig::parse("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.hash(), RunConfig::default().hash());
        let mut d = c.clone();
        d.seed = 5;
        assert_ne!(c.hash(), d.hash());
        assert!(matches!(RunConfig::parse(r#"{"bogus": 1}"#), Err(Error::Config(_))));
        let back = RunConfig::parse(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert_eq!("heights".parse::<Suite>().unwrap(), Suite::Heights);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn deterministic_report() {
        let c = fast_config();
        let a = run_suite(&c, Some(&[Suite::Lfun, Suite::Heights])).unwrap();
        let b = run_suite(&c, Some(&[Suite::Lfun, Suite::Heights])).unwrap();
        assert_eq!(a.render(Format::Json).unwrap(), b.render(Format::Json).unwrap());
        assert!(a.passed, "{}", a.to_text());
        let back: VerificationReport = serde_json::from_str(&a.render(Format::Json).unwrap()).unwrap();
        assert_eq!(back, a);
        let text = a.to_text();
        for ch in &a.checks {
            assert!(text.contains(&ch.name) && text.contains(&ch.description));
        }
        assert_eq!(a.to_csv().unwrap().lines().count(), a.checks.len() + 1);
    }

    #[test]
    fn missing_file_is_config_error() {
        let mut c = fast_config();
        c.lattices = vec![Source::File { file: "/nonexistent/lattice.json".into() }];
        assert!(matches!(run_suite(&c, Some(&[Suite::Lattice])), Err(Error::Config(_))));
    }
}
