//! Axiom checking: exhaustive on finite carriers, seeded samples otherwise.

pub mod laws;
pub mod sample;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    Carrier, ImmStructure, MobiStructure, ModelError, RingStructure, SampleSpec, Structure, Value,
};
use laws::{ImmOps, Law};
pub use sample::Sampler;

/// Evaluation budget for one exhaustive quantifier loop.
pub const EXHAUSTIVE_CAP: u64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("carrier is infinite and no sampling spec was given")]
    MissingSample,
    #[error("profile {profile} does not apply to a {kind} structure")]
    WrongKind { profile: &'static str, kind: &'static str },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomProfile {
    MobiFull,
    MobiDagger,
    Imm,
    ImmStar,
    Ring,
    DerivedMobiProps,
    DerivedImmProps,
    DerivedImmStarProps,
    DerivedRingProps,
    FullMedial,
}

impl AxiomProfile {
    pub fn id(self) -> &'static str {
        match self {
            AxiomProfile::MobiFull => "mobi-full",
            AxiomProfile::MobiDagger => "mobi-dagger",
            AxiomProfile::Imm => "imm",
            AxiomProfile::ImmStar => "imm-star",
            AxiomProfile::Ring => "ring",
            AxiomProfile::DerivedMobiProps => "derived-mobi-props",
            AxiomProfile::DerivedImmProps => "derived-imm-props",
            AxiomProfile::DerivedImmStarProps => "derived-immstar-props",
            AxiomProfile::DerivedRingProps => "derived-ring-props",
            AxiomProfile::FullMedial => "full-medial",
        }
    }

    pub fn from_id(id: &str) -> Option<AxiomProfile> {
        use AxiomProfile::*;
        [
            MobiFull,
            MobiDagger,
            Imm,
            ImmStar,
            Ring,
            DerivedMobiProps,
            DerivedImmProps,
            DerivedImmStarProps,
            DerivedRingProps,
            FullMedial,
        ]
        .into_iter()
        .find(|p| p.id() == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: Status,
    pub variables: Vec<String>,
    pub witness: Vec<String>,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// The witness as carrier elements, for re-evaluation.
    #[serde(skip)]
    pub witness_values: Vec<Value>,
}

impl AxiomResult {
    pub fn skipped(axiom: &str, vars: &[&str], note: &str) -> AxiomResult {
        AxiomResult {
            axiom: axiom.to_string(),
            status: Status::Skipped,
            variables: vars.iter().map(|v| v.to_string()).collect(),
            witness: Vec::new(),
            checked: 0,
            note: Some(note.to_string()),
            witness_values: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub structure: String,
    pub kind: String,
    pub profile: String,
    pub mode: String,
    /// Seed and count behind a sampled report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleSpec>,
    pub results: Vec<AxiomResult>,
    pub verdict: Verdict,
}

impl Report {
    fn new(s: &Structure, profile: &str, mode: &Mode, results: Vec<AxiomResult>) -> Report {
        let verdict = if results.iter().any(|r| r.status == Status::Fail) {
            Verdict::Fail
        } else if results.iter().any(|r| r.status == Status::CapExceeded) {
            Verdict::CapExceeded
        } else {
            Verdict::Pass
        };
        Report {
            structure: s.name().to_string(),
            kind: s.kind().name().to_string(),
            profile: profile.to_string(),
            mode: mode.name().to_string(),
            sample: match mode {
                Mode::Sampled(s) => Some(s.spec().clone()),
                Mode::Exhaustive { .. } => None,
            },
            results,
            verdict,
        }
    }

    /// Report assembled from results produced outside the law runner.
    pub fn from_results(
        s: &Structure,
        profile: &str,
        mode: &str,
        results: Vec<AxiomResult>,
    ) -> Report {
        let mut report = Report::new(s, profile, &Mode::Exhaustive { n: 0, cap: 0 }, results);
        report.mode = mode.to_string();
        report
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports always serialize")
    }
}

/// How quantified variables range.
#[derive(Clone, Debug)]
pub enum Mode {
    Exhaustive { n: usize, cap: u64 },
    Sampled(Sampler),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive { .. } => "exhaustive",
            Mode::Sampled(_) => "sampled",
        }
    }

    /// Exhaustive on finite carriers (any sample is ignored); otherwise the
    /// given sample, falling back to the carrier's own spec.
    pub fn for_carrier(
        carrier: &Carrier,
        sample: Option<&SampleSpec>,
        specials: Vec<Value>,
    ) -> Result<Mode, CheckError> {
        match carrier {
            Carrier::Finite(labels) => Ok(Mode::Exhaustive { n: labels.len(), cap: EXHAUSTIVE_CAP }),
            Carrier::Rational { domain, sampling } => {
                let spec = sample.or(sampling.as_ref()).ok_or(CheckError::MissingSample)?;
                Ok(Mode::Sampled(Sampler::new(domain.clone(), spec.clone(), specials)))
            }
        }
    }
}

/// Runs one law; `stream` separates the sample streams of different laws.
pub fn run_law<C: ?Sized>(
    ctx: &C,
    carrier: &Carrier,
    law: &Law<C>,
    mode: &Mode,
    stream: u64,
) -> AxiomResult {
    let mut result = AxiomResult {
        axiom: law.id.to_string(),
        status: Status::Pass,
        variables: law.vars.iter().map(|v| v.to_string()).collect(),
        witness: Vec::new(),
        checked: 0,
        note: None,
        witness_values: Vec::new(),
    };
    let fail = |result: &mut AxiomResult, args: &[Value], note: Option<String>| {
        result.status = Status::Fail;
        result.witness = args.iter().map(|v| carrier.render(v)).collect();
        result.witness_values = args.to_vec();
        result.note = note;
    };
    match mode {
        Mode::Exhaustive { n, cap } => {
            let arity = law.arity();
            let total = (*n as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
            let budget = total.min(*cap as u128) as u64;
            let mut idx = vec![0usize; arity];
            let mut args: Vec<Value> = vec![Value::Label(0); arity];
            for t in 0..budget {
                result.checked = t + 1;
                match (law.holds)(ctx, &args) {
                    Ok(true) => {}
                    Ok(false) => {
                        fail(&mut result, &args, None);
                        return result;
                    }
                    Err(e) => {
                        fail(&mut result, &args, Some(format!("evaluation error: {e}")));
                        return result;
                    }
                }
                for pos in (0..arity).rev() {
                    idx[pos] += 1;
                    if idx[pos] < *n {
                        args[pos] = Value::Label(idx[pos]);
                        break;
                    }
                    idx[pos] = 0;
                    args[pos] = Value::Label(0);
                }
            }
            if total > budget as u128 {
                result.status = Status::CapExceeded;
                result.note = Some(format!(
                    "exhaustiveness cap exceeded: {n}^{arity} tuples, {budget} checked"
                ));
            }
        }
        Mode::Sampled(sampler) => {
            for args in sampler.tuples(stream, law.arity()) {
                result.checked += 1;
                match (law.holds)(ctx, &args) {
                    Ok(true) => {}
                    Ok(false) => {
                        fail(&mut result, &args, None);
                        return result;
                    }
                    Err(e) => {
                        fail(&mut result, &args, Some(format!("evaluation error: {e}")));
                        return result;
                    }
                }
            }
        }
    }
    result
}

fn run_all<C: ?Sized>(
    ctx: &C,
    carrier: &Carrier,
    laws: &[Law<C>],
    mode: &Mode,
    first_stream: u64,
) -> Vec<AxiomResult> {
    laws.iter()
        .enumerate()
        .map(|(i, law)| run_law(ctx, carrier, law, mode, first_stream + i as u64))
        .collect()
}

fn mobi_specials(m: &MobiStructure) -> Vec<Value> {
    vec![m.zero().clone(), m.half().clone(), m.one().clone()]
}

fn imm_specials(b: &dyn ImmOps) -> Vec<Value> {
    let mut v = vec![b.unit()];
    v.extend(b.zero().ok());
    v.extend(b.half().ok());
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MobiProfile {
    Full,
    Dagger,
}

pub fn check_mobi(
    m: &MobiStructure,
    profile: MobiProfile,
    sample: Option<&SampleSpec>,
) -> Result<Report, CheckError> {
    let mode = Mode::for_carrier(m.carrier(), sample, mobi_specials(m))?;
    let laws = laws::mobi_axioms();
    let mut results = Vec::with_capacity(laws.len());
    for (i, law) in laws.iter().enumerate() {
        if profile == MobiProfile::Dagger && law.id == "A6" {
            results.push(AxiomResult::skipped(law.id, law.vars, "not part of the mobi-dagger profile"));
        } else {
            results.push(run_law(m, m.carrier(), law, &mode, i as u64));
        }
    }
    let id = match profile {
        MobiProfile::Full => AxiomProfile::MobiFull,
        MobiProfile::Dagger => AxiomProfile::MobiDagger,
    };
    Ok(Report::new(&Structure::Mobi(m.clone()), id.id(), &mode, results))
}

pub fn check_imm(b: &ImmStructure, sample: Option<&SampleSpec>) -> Result<Report, CheckError> {
    let mode = Mode::for_carrier(b.carrier(), sample, imm_specials(b))?;
    let results = run_all(b as &dyn ImmOps, b.carrier(), &laws::imm_axioms(), &mode, 0);
    Ok(Report::new(&Structure::Imm(b.clone()), AxiomProfile::Imm.id(), &mode, results))
}

pub fn check_imm_star(b: &ImmStructure, sample: Option<&SampleSpec>) -> Result<Report, CheckError> {
    let mode = Mode::for_carrier(b.carrier(), sample, imm_specials(b))?;
    let results = run_all(b as &dyn ImmOps, b.carrier(), &laws::imm_star_axioms(), &mode, 0);
    Ok(Report::new(&Structure::ImmStar(b.clone()), AxiomProfile::ImmStar.id(), &mode, results))
}

pub fn check_ring(r: &RingStructure, sample: Option<&SampleSpec>) -> Result<Report, CheckError> {
    let mode = Mode::for_carrier(r.carrier(), sample, vec![r.zero().clone(), r.one().clone()])?;
    let results = run_all(r, r.carrier(), &laws::ring_axioms(), &mode, 0);
    Ok(Report::new(&Structure::Ring(r.clone()), AxiomProfile::Ring.id(), &mode, results))
}

/// Re-verifies the identities that follow from a structure's axioms.
///
/// Mobi structures get the mobi identities plus the IMM and IMM* identities
/// of their derived operations. IMM structures get the IMM* identities only
/// when their `⊕` is cancellative; otherwise those entries are skipped.
pub fn check_derived_properties(
    s: &Structure,
    sample: Option<&SampleSpec>,
) -> Result<Report, CheckError> {
    match s {
        Structure::Mobi(m) => {
            let mode = Mode::for_carrier(m.carrier(), sample, mobi_specials(m))?;
            let mobi = laws::mobi_properties();
            let mut results = run_all(m, m.carrier(), &mobi, &mode, 0);
            let imm = laws::imm_properties();
            let offset = mobi.len() as u64;
            results.extend(run_all(m as &dyn ImmOps, m.carrier(), &imm, &mode, offset));
            let star = laws::imm_star_properties();
            results.extend(run_all(
                m as &dyn ImmOps,
                m.carrier(),
                &star,
                &mode,
                offset + imm.len() as u64,
            ));
            Ok(Report::new(s, AxiomProfile::DerivedMobiProps.id(), &mode, results))
        }
        Structure::Imm(b) | Structure::ImmStar(b) => {
            let ops = b as &dyn ImmOps;
            let mode = Mode::for_carrier(b.carrier(), sample, imm_specials(b))?;
            let imm = laws::imm_properties();
            let mut results = run_all(ops, b.carrier(), &imm, &mode, 0);
            let star = laws::imm_star_properties();
            let cancel = &laws::imm_star_axioms()[2];
            let cancellative = matches!(s, Structure::ImmStar(_))
                || run_law(ops, b.carrier(), cancel, &mode, 100).passed();
            if cancellative {
                results.extend(run_all(ops, b.carrier(), &star, &mode, imm.len() as u64));
            } else {
                results.extend(
                    star.iter()
                        .map(|l| AxiomResult::skipped(l.id, l.vars, "oplus is not cancellative")),
                );
            }
            let profile = if cancellative {
                AxiomProfile::DerivedImmStarProps
            } else {
                AxiomProfile::DerivedImmProps
            };
            Ok(Report::new(s, profile.id(), &mode, results))
        }
        Structure::Ring(r) => {
            let mode = Mode::for_carrier(r.carrier(), sample, vec![r.zero().clone(), r.one().clone()])?;
            let results = run_all(r, r.carrier(), &laws::ring_axioms()[7..], &mode, 7);
            Ok(Report::new(s, AxiomProfile::DerivedRingProps.id(), &mode, results))
        }
    }
}

/// Checks the general medial law (the `½`-medial law with any `d`).
pub fn check_full_medial(m: &MobiStructure, sample: Option<&SampleSpec>) -> Result<Report, CheckError> {
    let mode = Mode::for_carrier(m.carrier(), sample, mobi_specials(m))?;
    let result = run_law(m, m.carrier(), &laws::full_medial(), &mode, 0);
    Ok(Report::new(&Structure::Mobi(m.clone()), AxiomProfile::FullMedial.id(), &mode, vec![result]))
}

/// The defining profile of a structure's kind.
pub fn check_structure(
    s: &Structure,
    profile: Option<AxiomProfile>,
    sample: Option<&SampleSpec>,
) -> Result<Report, CheckError> {
    let kind = s.kind().name();
    let wrong = |p: AxiomProfile| CheckError::WrongKind { profile: p.id(), kind };
    match (s, profile) {
        (Structure::Mobi(m), None | Some(AxiomProfile::MobiFull)) => {
            check_mobi(m, MobiProfile::Full, sample)
        }
        (Structure::Mobi(m), Some(AxiomProfile::MobiDagger)) => {
            check_mobi(m, MobiProfile::Dagger, sample)
        }
        (Structure::Mobi(m), Some(AxiomProfile::FullMedial)) => check_full_medial(m, sample),
        (Structure::Imm(b), None) | (Structure::Imm(b) | Structure::ImmStar(b), Some(AxiomProfile::Imm)) => {
            check_imm(b, sample)
        }
        (Structure::ImmStar(b), None) | (Structure::Imm(b) | Structure::ImmStar(b), Some(AxiomProfile::ImmStar)) => {
            check_imm_star(b, sample)
        }
        (Structure::Ring(r), None | Some(AxiomProfile::Ring)) => check_ring(r, sample),
        (
            _,
            Some(
                AxiomProfile::DerivedMobiProps
                | AxiomProfile::DerivedImmProps
                | AxiomProfile::DerivedImmStarProps
                | AxiomProfile::DerivedRingProps,
            ),
        ) => check_derived_properties(s, sample),
        (_, Some(p)) => Err(wrong(p)),
    }
}
