//! `mobi`: verify, convert, enumerate and compare finite and rational
//! mobi algebras, IMM algebras and rings.
//!
//! JSON goes to stdout, a one-line summary to stderr. Exit codes: 0 all
//! pass, 1 axiom or property failure, 2 precondition failure, 3 usage or
//! parse error, 4 cap exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use mobi_core::axioms::{check_derived_properties, check_structure, AxiomProfile, CheckError, Report, Verdict};
use mobi_core::exemplars::{make_example, ExampleError, ExampleId};
use mobi_core::model::{self, parse_rational, ModelError, SampleSpec, Structure, DEFAULT_SEED};
use mobi_core::search::{
    certify_map, enumerate_mobi, enumerate_rings_with_half, find_isomorphism, verify_bijection, EnumerationTask,
    MobiusMap, SearchError, DEFAULT_NODE_CAP,
};
use mobi_core::transforms::{self, TransformError};

const EXIT_FAIL: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "mobi", version, about = "Mobi algebras, IMM algebras and rings with one half")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Sampling {
    /// Number of sampled tuples per law on rational carriers.
    #[arg(long)]
    samples: Option<usize>,
    /// Sampling seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl Sampling {
    fn spec(&self) -> Option<SampleSpec> {
        if self.samples.is_none() && self.seed.is_none() {
            return None;
        }
        let mut spec = SampleSpec::default();
        if let Some(n) = self.samples {
            spec.count = n;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        Some(spec)
    }
}

#[derive(clap::Args, Clone)]
struct Input {
    /// StructureDoc path, or `example:NAME` for a built-in fixture.
    input: String,
    /// Fixture parameter `key=value` (with `example:NAME` inputs).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure against the axioms of its kind.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        profile: Option<String>,
        /// Also run the derived-property suites.
        #[arg(long)]
        derived: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Convert between mobi, IMM and ring presentations.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        to: Target,
        /// For IMM to mobi: use the half-inverse formula instead of solving.
        #[arg(long, value_enum)]
        via: Option<Via>,
        /// Write the StructureDoc here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Enumerate finite models of a given order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "mobi")]
        signature: Signature,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Decide or certify isomorphism between two structures.
    Iso {
        left: String,
        right: String,
        /// Candidate map: {"map": {"x": "y", ...}} or {"mobius": [a, b, c, d]}.
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Emit a built-in fixture as a StructureDoc.
    Example {
        #[arg(long)]
        id: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// Certify that the ring and mobi constructions invert each other.
    Roundtrip {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Imm,
    Ring,
    Mobi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Signature {
    Mobi,
    RingWithHalf,
}

/// A failure mapped to its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, kind: "usage", message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_PRECONDITION, kind: "precondition", message: message.into() }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Closure { .. } | ModelError::DivisionByZero(_) => Failure::precondition(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Model(m) => m.into(),
            other => Failure::precondition(other.to_string()),
        }
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Model(m) => m.into(),
            other => Failure::precondition(other.to_string()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Model(m) => m.into(),
            SearchError::KindMismatch(..) => Failure::usage(e.to_string()),
            other => Failure::precondition(other.to_string()),
        }
    }
}

impl From<ExampleError> for Failure {
    fn from(e: ExampleError) -> Self {
        match e {
            ExampleError::Unknown(_) | ExampleError::InvalidParameter(_) => Failure::usage(e.to_string()),
            ExampleError::Model(m) => m.into(),
            ExampleError::Transform(t) => t.into(),
            other => Failure::precondition(other.to_string()),
        }
    }
}

/// What a successful verb prints and returns.
struct Outcome {
    stdout: String,
    summary: String,
    code: u8,
}

fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::usage(format!("parameter {p:?} is not key=value")))
        })
        .collect()
}

fn fixture(name: &str, params: &[String]) -> Result<Structure, Failure> {
    let id = ExampleId::parse(name, &parse_params(params)?)?;
    Ok(make_example(&id)?)
}

fn load(spec: &str, params: &[String]) -> Result<Structure, Failure> {
    if let Some(name) = spec.strip_prefix("example:") {
        return fixture(name, params);
    }
    if !params.is_empty() {
        return Err(Failure::usage("--param only applies to example: inputs"));
    }
    let bytes = fs::read(spec).map_err(|e| Failure::usage(format!("cannot read {spec}: {e}")))?;
    Ok(model::parse_structure(&bytes)?)
}

fn pretty(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn verdict_code(reports: &[&Report]) -> u8 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.verdict == Verdict::CapExceeded) {
        EXIT_CAP
    } else {
        0
    }
}

fn summarize(r: &Report) -> String {
    let passed = r.results.iter().filter(|x| x.passed()).count();
    let mut line = format!(
        "{} [{}] {}: {}/{} pass ({})",
        r.structure,
        r.kind,
        r.profile,
        passed,
        r.results.len(),
        serde_json::to_value(r.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    );
    if let Some(f) = r.failures().next() {
        line.push_str(&format!(
            "; {} fails at ({})",
            f.axiom,
            f.variables.iter().zip(&f.witness).map(|(v, w)| format!("{v}={w}")).collect::<Vec<_>>().join(", ")
        ));
    }
    line
}

fn verify(input: &Input, profile: Option<&str>, derived: bool, sampling: &Sampling) -> Result<Outcome, Failure> {
    let s = load(&input.input, &input.params)?;
    let profile = match profile {
        Some(p) => Some(AxiomProfile::from_id(p).ok_or_else(|| Failure::usage(format!("unknown profile {p:?}")))?),
        None => None,
    };
    let spec = sampling.spec();
    let mut reports = vec![check_structure(&s, profile, spec.as_ref())?];
    if derived {
        reports.push(check_derived_properties(&s, spec.as_ref())?);
    }
    let refs: Vec<&Report> = reports.iter().collect();
    let code = verdict_code(&refs);
    let summary = reports.iter().map(summarize).collect::<Vec<_>>().join("\n");
    let doc = json!({
        "verb": "verify",
        "structure": s.name(),
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    });
    Ok(Outcome { stdout: pretty(&doc), summary, code })
}

fn convert(input: &Input, to: Target, via: Option<Via>, output: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let s = load(&input.input, &input.params)?;
    if via.is_some() && !matches!((&s, to), (Structure::Imm(_) | Structure::ImmStar(_), Target::Mobi)) {
        return Err(Failure::usage("--via only applies to IMM to mobi conversion"));
    }
    let out: Structure = match (&s, to) {
        (Structure::Mobi(m), Target::Imm) => Structure::ImmStar(transforms::derive_imm_from_mobi(m)?),
        (Structure::Mobi(m), Target::Ring) => {
            let two = transforms::mobi_two(m)?;
            Structure::Ring(transforms::mobi_to_ring(m, &two)?)
        }
        (Structure::Imm(b) | Structure::ImmStar(b), Target::Ring) => Structure::Ring(transforms::imm_to_ring(b)?),
        (Structure::Imm(b) | Structure::ImmStar(b), Target::Mobi) => Structure::Mobi(match via {
            Some(Via::Inverse) => transforms::imm_to_mobi_via_half_inverse(b)?,
            None => transforms::imm_star_to_mobi(b)?,
        }),
        (Structure::Ring(r), Target::Imm) => Structure::ImmStar(transforms::ring_to_imm(r)?),
        (Structure::Ring(r), Target::Mobi) => Structure::Mobi(transforms::ring_to_mobi(r)?),
        (s, _) => {
            return Err(Failure::usage(format!("the structure is already a {}", s.kind().name())));
        }
    };
    let bytes = model::serialize_structure(&out);
    let summary = format!("{} [{}] -> {} [{}]", s.name(), s.kind().name(), out.name(), out.kind().name());
    let stdout = match output {
        Some(path) => {
            fs::write(path, &bytes).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            pretty(&json!({"verb": "convert", "structure": out.name(), "kind": out.kind().name(), "output": path.display().to_string()}))
        }
        None => String::from_utf8(bytes).expect("documents are UTF-8"),
    };
    Ok(Outcome { stdout, summary, code: 0 })
}

fn node_cap() -> Result<u64, Failure> {
    match std::env::var("MOBI_NODE_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("MOBI_NODE_CAP={v} is not a count"))),
        Err(_) => Ok(DEFAULT_NODE_CAP),
    }
}

fn enumerate(order: usize, signature: Signature, up_to_iso: bool) -> Result<Outcome, Failure> {
    let mut lines = String::new();
    let mut push = |s: &Structure| {
        lines.push_str(&String::from_utf8(model::serialize_structure(s)).expect("documents are UTF-8"));
    };
    let (summary_json, summary, code) = match signature {
        Signature::Mobi => {
            let task = EnumerationTask { order, up_to_iso, node_cap: node_cap()? };
            let e = enumerate_mobi(&task)?;
            for m in &e.structures {
                push(&Structure::Mobi(m.clone()));
            }
            let code = if e.capped { EXIT_CAP } else { 0 };
            (
                json!({"summary": {
                    "signature": "mobi",
                    "order": order,
                    "up_to_iso": up_to_iso,
                    "count": e.count(),
                    "labeled": e.labeled,
                    "nodes": e.nodes,
                    "capped": e.capped,
                    "parity_pruned": e.parity_pruned,
                }}),
                format!("order {order} mobi: {} structures, {} labelled, {} nodes", e.count(), e.labeled, e.nodes),
                code,
            )
        }
        Signature::RingWithHalf => {
            let e = enumerate_rings_with_half(order)?;
            let rings: Vec<_> = if up_to_iso {
                e.rings.clone()
            } else {
                return Err(Failure::usage("ring-with-half enumeration is only available with --up-to-iso"));
            };
            for r in &rings {
                push(&Structure::Ring(r.clone()));
            }
            (
                json!({"summary": {
                    "signature": "ring-with-half",
                    "order": order,
                    "up_to_iso": true,
                    "count": rings.len(),
                    "presentations": e.presentations,
                }}),
                format!("order {order} rings with one half: {} classes", rings.len()),
                0,
            )
        }
    };
    lines.push_str(&serde_json::to_string(&summary_json).expect("JSON values serialize"));
    lines.push('\n');
    Ok(Outcome { stdout: lines, summary, code })
}

fn candidate_map(path: &PathBuf) -> Result<Json, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("invalid map file: {e}")))
}

fn iso(left: &str, right: &str, map: Option<&PathBuf>, sampling: &Sampling) -> Result<Outcome, Failure> {
    let (l, r) = (load(left, &[])?, load(right, &[])?);
    let Some(path) = map else {
        let found = find_isomorphism(&l, &r)?;
        let summary = match &found {
            Some(_) => format!("{} and {} are isomorphic", l.name(), r.name()),
            None => format!("{} and {} are not isomorphic", l.name(), r.name()),
        };
        let doc = json!({"verb": "iso", "isomorphic": found.is_some(), "bijection": found});
        return Ok(Outcome { stdout: pretty(&doc), summary, code: if found.is_some() { 0 } else { EXIT_FAIL } });
    };
    let candidate = candidate_map(path)?;
    if let Some(coeffs) = candidate.get("mobius").and_then(Json::as_array) {
        let qs: Vec<_> = coeffs
            .iter()
            .map(|c| match c {
                Json::String(s) => parse_rational(s).map_err(Failure::from),
                Json::Number(n) => parse_rational(&n.to_string()).map_err(Failure::from),
                _ => Err(Failure::usage("mobius coefficients are rational strings")),
            })
            .collect::<Result<_, _>>()?;
        let [a, b, c, d]: [_; 4] = qs.try_into().map_err(|_| Failure::usage("mobius takes four coefficients"))?;
        let phi = MobiusMap::new(a, b, c, d);
        let spec = sampling.spec().unwrap_or(SampleSpec::new(DEFAULT_SEED, 500));
        let cert = certify_map(&l, &r, &phi, &spec)?;
        let ok = cert.status == mobi_core::axioms::Status::Pass;
        let summary = format!("{} on {} -> {}: {} ({} checks)", cert.map, l.name(), r.name(), if ok { "certified" } else { "refuted" }, cert.checked);
        let doc = json!({"verb": "iso", "isomorphic": ok, "certificate": cert});
        return Ok(Outcome { stdout: pretty(&doc), summary, code: if ok { 0 } else { EXIT_FAIL } });
    }
    let pairs = candidate
        .get("map")
        .and_then(Json::as_object)
        .ok_or_else(|| Failure::usage("map file needs a \"map\" object or a \"mobius\" array"))?;
    let (ll, rl) = match (l.carrier().labels(), r.carrier().labels()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Failure::usage("label maps need finite carriers")),
    };
    let mut indices = vec![usize::MAX; ll.len()];
    for (from, to) in pairs {
        let x = ll.iter().position(|s| s == from).ok_or_else(|| Failure::usage(format!("unknown label {from:?}")))?;
        let to = to.as_str().ok_or_else(|| Failure::usage("map targets are labels"))?;
        let y = rl.iter().position(|s| s == to).ok_or_else(|| Failure::usage(format!("unknown label {to:?}")))?;
        indices[x] = y;
    }
    let ok = verify_bijection(&l, &r, &indices)?;
    let summary = format!("candidate map {}", if ok { "is an isomorphism" } else { "is not an isomorphism" });
    let doc = json!({"verb": "iso", "isomorphic": ok, "map": pairs});
    Ok(Outcome { stdout: pretty(&doc), summary, code: if ok { 0 } else { EXIT_FAIL } })
}

fn example(id: &str, params: &[String]) -> Result<Outcome, Failure> {
    let s = fixture(id, params)?;
    let stdout = String::from_utf8(model::serialize_structure(&s)).expect("documents are UTF-8");
    Ok(Outcome { stdout, summary: format!("{} [{}]", s.name(), s.kind().name()), code: 0 })
}

fn roundtrip(input: &Input) -> Result<Outcome, Failure> {
    let s = load(&input.input, &input.params)?;
    let report = transforms::roundtrip_check(&s)?;
    let code = verdict_code(&[&report]);
    Ok(Outcome { stdout: pretty(&json!({"verb": "roundtrip", "report": report.to_json()})), summary: summarize(&report), code })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Verify { input, profile, derived, sampling } => verify(&input, profile.as_deref(), derived, &sampling),
        Command::Convert { input, to, via, output } => convert(&input, to, via, output.as_ref()),
        Command::Enumerate { order, signature, up_to_iso } => enumerate(order, signature, up_to_iso),
        Command::Iso { left, right, map, sampling } => iso(&left, &right, map.as_ref(), &sampling),
        Command::Example { id, params } => example(&id, &params),
        Command::Roundtrip { input } => roundtrip(&input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(f) => {
            let doc = json!({"error": {"kind": f.kind, "message": f.message}});
            let _ = stdout.write_all(pretty(&doc).as_bytes());
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
