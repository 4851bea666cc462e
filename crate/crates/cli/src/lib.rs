//! The `tgrs` command line: construct, verify and search.
//!
//! Every path that does not crash writes exactly one JSON document (or a
//! CSV catalog) to stdout. Exit codes: 0 success, 1 a certificate or check
//! failed, 2 the input or parameters were invalid.

pub mod catalog;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tgrs_core::code::DEFAULT_DISTANCE_CAP;
use tgrs_core::constructions::{construct, ConstructionRequest, Scheme};
use tgrs_core::duality::{is_euclidean_self_dual, is_hermitian_self_dual};
use tgrs_core::mds::{is_mds, preferred_method};
use tgrs_core::serial::{construction_json, distance_json, duality_json, mds_json};
use tgrs_core::{CodeDescriptor, Distance, Error};

pub const DISTANCE_CAP_ENV: &str = "TGRS_DISTANCE_CAP";

#[derive(Parser, Debug)]
#[command(name = "tgrs", version, about = "Hermitian self-dual twisted GRS codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code from one of the five schemes and certify it.
    Construct(ConstructArgs),
    /// Run certifiers on a code descriptor read from a file or stdin.
    Verify(VerifyArgs),
    /// Sweep a parameter grid and write a catalog.
    Search(SearchArgs),
}

/// Elements are little-endian coefficient lists such as `1,2`.
#[derive(clap::Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Scheme,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub e: u32,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long, value_parser = parse_elt)]
    pub delta: Option<Elt>,
    #[arg(long, value_parser = parse_elt)]
    pub a: Option<Elt>,
    #[arg(long, value_parser = parse_elt)]
    pub b: Option<Elt>,
    #[arg(long, value_parser = parse_elt)]
    pub c: Option<Elt>,
    #[arg(long = "i-c")]
    pub i_c: Option<u64>,
    #[arg(long, value_parser = parse_elt)]
    pub lambda: Option<Elt>,
    /// Repeat once per η slot; omit to solve.
    #[arg(long, value_parser = parse_elt)]
    pub eta: Vec<Elt>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print only the code descriptor.
    #[arg(long)]
    pub descriptor_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Hermitian,
    Euclidean,
    Mds,
    Distance,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Descriptor file; stdin when absent or `-`.
    pub path: Option<String>,
    /// Checks to run; hermitian, mds and distance when absent.
    #[arg(long = "check", value_enum)]
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct SearchArgs {
    /// Primes, as a list `2,3,5` or a range `2..7`.
    #[arg(long, value_parser = parse_range)]
    pub p: Vec<IntList>,
    /// Extension degrees, as a list or range.
    #[arg(long, value_parser = parse_range)]
    pub e: Vec<IntList>,
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme, default_value = "I,II,III,IV,V")]
    pub schemes: Vec<Scheme>,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Record per-row wall time (breaks byte-identical reruns).
    #[arg(long)]
    pub timing: bool,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A field element given as little-endian coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elt(pub Vec<u32>);

/// A list `2,3,5` or inclusive range `2..7` of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<u32>);

pub fn parse_elt(s: &str) -> Result<Elt, String> {
    s.split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|e| format!("bad coefficient {c:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Elt)
}

fn parse_range(s: &str) -> Result<IntList, String> {
    parse_range_inner(s).map(IntList)
}

fn parse_range_inner(s: &str) -> Result<Vec<u32>, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        let hi: u32 = hi.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        return Ok((lo..=hi).collect());
    }
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

/// Exit status plus everything destined for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn json(code: i32, v: &Value) -> Self {
        let mut stdout = serde_json::to_string(v).expect("JSON values always serialize");
        stdout.push('\n');
        Outcome { code, stdout }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroDivision => "zero-division",
        Error::Usage(_) => "usage",
        Error::InvalidField(_) => "invalid-field",
        Error::TowerMismatch => "tower-mismatch",
        Error::NotInSubfield(_) => "not-in-subfield",
        Error::Shape(_) => "shape",
        Error::Singular { .. } => "singular",
        Error::RepeatedPoint(..) => "repeated-point",
        Error::InvalidCode(_) => "invalid-code",
        Error::Precondition(_) => "precondition",
        Error::Infeasible(_) => "infeasible",
        Error::CertificationFailed(_) => "certification-failed",
        Error::Internal(_) => "internal",
        Error::Schema { .. } => "schema",
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::CertificationFailed(_) | Error::Internal(_) => 1,
        _ => 2,
    };
    let mut body = json!({ "error": e.to_string(), "kind": error_kind(e) });
    if let Error::Schema { path, .. } = e {
        body["path"] = json!(path);
    }
    Outcome::json(code, &body)
}

/// Reads the distance cap from the environment, falling back to 10⁷.
pub fn distance_cap() -> Result<u64, Error> {
    match std::env::var(DISTANCE_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{DISTANCE_CAP_ENV} must be a nonnegative integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_DISTANCE_CAP),
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                },
                _ => Outcome::json(2, &json!({ "error": e.to_string(), "kind": "usage" })),
            };
        }
    };
    match cli.command {
        Command::Construct(a) => cmd_construct(&a),
        Command::Verify(a) => cmd_verify(&a, stdin),
        Command::Search(a) => cmd_search(&a),
    }
}

pub fn cmd_construct(a: &ConstructArgs) -> Outcome {
    let req = ConstructionRequest {
        scheme: a.scheme,
        p: a.p,
        e: a.e,
        n: a.n,
        t: a.t,
        delta: a.delta.clone().map(|x| x.0),
        a: a.a.clone().map(|x| x.0),
        b: a.b.clone().map(|x| x.0),
        c: a.c.clone().map(|x| x.0),
        i_c: a.i_c,
        lambda: a.lambda.clone().map(|x| x.0),
        eta: a.eta.iter().map(|x| x.0.clone()).collect(),
        twist: None,
        seed: a.seed,
    };
    match construct(&req) {
        Ok(r) if a.descriptor_only => Outcome {
            code: 0,
            stdout: CodeDescriptor::from_code(&r.code).to_json() + "\n",
        },
        Ok(r) => Outcome::json(0, &construction_json(&r)),
        Err(e) => error_outcome(&e),
    }
}

pub fn cmd_verify(a: &VerifyArgs, stdin: &mut dyn Read) -> Outcome {
    let text = match a.path.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map(|_| s)
        }
        Some(p) => std::fs::read_to_string(p),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return error_outcome(&Error::Usage(format!("cannot read input: {e}"))),
    };
    let code = match CodeDescriptor::from_json(&text).and_then(|d| d.to_code()) {
        Ok(c) => c,
        Err(e) => return error_outcome(&e),
    };
    let cap = match distance_cap() {
        Ok(c) => c,
        Err(e) => return error_outcome(&e),
    };
    let checks = if a.checks.is_empty() {
        vec![Check::Hermitian, Check::Mds, Check::Distance]
    } else {
        a.checks.clone()
    };
    let mut report = serde_json::Map::new();
    let mut passed = true;
    for check in checks {
        let (name, ok, body) = match check {
            Check::Hermitian => match is_hermitian_self_dual(&code) {
                Ok(c) => ("hermitian", c.self_dual, duality_json(&c)),
                Err(e) => return error_outcome(&e),
            },
            Check::Euclidean => match is_euclidean_self_dual(&code) {
                Ok(c) => ("euclidean", c.self_dual, duality_json(&c)),
                Err(e) => return error_outcome(&e),
            },
            Check::Mds => match is_mds(&code, preferred_method(&code)) {
                Ok(c) => ("mds", c.is_mds, mds_json(&c)),
                Err(e) => return error_outcome(&e),
            },
            Check::Distance => {
                let d = code.min_distance(cap);
                let body = json!({
                    "distance": distance_json(d),
                    "singleton_bound": code.n() - code.k() + 1,
                    "cap": cap,
                });
                ("distance", matches!(d, Distance::Exact(_)), body)
            }
        };
        passed &= ok;
        let mut body = body;
        body["passed"] = json!(ok);
        report.insert(name.into(), body);
    }
    let out = json!({
        "n": code.n(),
        "k": code.k(),
        "passed": passed,
        "checks": report,
    });
    Outcome::json(if passed { 0 } else { 1 }, &out)
}

pub fn cmd_search(a: &SearchArgs) -> Outcome {
    let cap = match distance_cap() {
        Ok(c) => c,
        Err(e) => return error_outcome(&e),
    };
    let cfg = catalog::SearchConfig {
        ps: a.p.iter().flat_map(|l| l.0.iter().copied()).collect(),
        es: a.e.iter().flat_map(|l| l.0.iter().copied()).collect(),
        schemes: a.schemes.clone(),
        limit: a.limit,
        seed: a.seed,
        distance_cap: cap,
        timing: a.timing,
    };
    let records = match catalog::run_search(&cfg) {
        Ok(r) => r,
        Err(e) => return error_outcome(&e),
    };
    let text = match a.format {
        Format::Json => catalog::to_json(&records),
        Format::Csv => match catalog::to_csv(&records, a.timing) {
            Ok(s) => s,
            Err(e) => return error_outcome(&e),
        },
    };
    match &a.out {
        None => Outcome { code: 0, stdout: text },
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => {
                let failed = records.iter().filter(|r| r.error.is_some()).count();
                Outcome::json(
                    0,
                    &json!({ "out": path, "records": records.len(), "failed": failed }),
                )
            }
            Err(e) => error_outcome(&Error::Usage(format!("cannot write {path}: {e}"))),
        },
    }
}
