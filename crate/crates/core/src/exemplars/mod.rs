//! Named example structures.

pub mod closure;
pub mod planar;
pub mod rings;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{
    parse_rational, q, qi, Carrier, Domain, Formula, ImmStructure, MobiStructure, ModelError,
    OpImpl, RingStructure, Structure, Table, Value, Q,
};
use crate::transforms::{self, TransformError};
pub use closure::{all_dyadic, closure_generate, ClosureResult, ClosureTask, DEFAULT_CLOSURE_CAP};
pub use planar::{planar_matrix_embedding, planar_matrix_embedding_with};
pub use rings::{matrix_ring, zmod, MatrixShape};

#[derive(Debug, Error)]
pub enum ExampleError {
    #[error("unknown example {0:?}")]
    Unknown(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported example: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Stub(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleId {
    Interval,
    IntervalThird,
    IntervalAlpha(Q),
    SymmetricInterval,
    ReciprocalInterval,
    ThreeElement,
    ModOdd(u32),
    Dyadic,
    FieldLine,
    Planar,
    PlanarK { k: Q, region: bool },
    /// Upper-triangular `d×d` matrices over `Z/n`, `n` odd.
    RingGeneric { modulus: u32, dim: usize },
    SubsetClosure,
    SemiringNote,
    FiniteGeneral,
    Imm1,
    Imm2,
    Imm3,
    Section4Imm,
    Zmod(u32),
    MatrixZmod { modulus: u32, dim: usize },
    RationalsRing,
}

pub const EXAMPLE_NAMES: [&str; 22] = [
    "interval",
    "interval-third",
    "interval-alpha",
    "symmetric-interval",
    "reciprocal-interval",
    "three-element",
    "mod-odd",
    "dyadic",
    "field-line",
    "planar",
    "planar-K",
    "ring-generic",
    "subset-closure",
    "semiring-note",
    "finite-general",
    "imm1",
    "imm2",
    "imm3",
    "section4-imm",
    "zmod",
    "matrix-zmod",
    "rationals-ring",
];

fn int_param(params: &BTreeMap<String, String>, key: &str, default: u32) -> Result<u32, ExampleError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| ExampleError::InvalidParameter(format!("{key}={v} is not a natural number"))),
    }
}

fn rat_param(params: &BTreeMap<String, String>, key: &str, default: Q) -> Result<Q, ExampleError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => parse_rational(v)
            .map_err(|_| ExampleError::InvalidParameter(format!("{key}={v} is not a rational"))),
    }
}

impl ExampleId {
    /// Builds an id from a fixture name and `key=value` parameters.
    pub fn parse(name: &str, params: &BTreeMap<String, String>) -> Result<ExampleId, ExampleError> {
        let allowed: &[&str] = match name {
            "interval-alpha" => &["alpha"],
            "mod-odd" | "zmod" => &["n"],
            "planar-K" => &["k", "region"],
            "ring-generic" | "matrix-zmod" => &["n", "dim"],
            _ => &[],
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(ExampleError::InvalidParameter(format!("{name} takes no parameter {k:?}")));
        }
        let id = match name {
            "interval" => ExampleId::Interval,
            "interval-third" => ExampleId::IntervalThird,
            "interval-alpha" => ExampleId::IntervalAlpha(rat_param(params, "alpha", qi(3))?),
            "symmetric-interval" => ExampleId::SymmetricInterval,
            "reciprocal-interval" => ExampleId::ReciprocalInterval,
            "three-element" => ExampleId::ThreeElement,
            "mod-odd" => ExampleId::ModOdd(int_param(params, "n", 1)?),
            "dyadic" => ExampleId::Dyadic,
            "field-line" => ExampleId::FieldLine,
            "planar" => ExampleId::Planar,
            "planar-K" => ExampleId::PlanarK {
                k: rat_param(params, "k", qi(1))?,
                region: match params.get("region").map(String::as_str) {
                    None | Some("true") => true,
                    Some("false") => false,
                    Some(v) => {
                        return Err(ExampleError::InvalidParameter(format!(
                            "region={v} must be true or false"
                        )))
                    }
                },
            },
            "ring-generic" => ExampleId::RingGeneric {
                modulus: int_param(params, "n", 3)?,
                dim: int_param(params, "dim", 2)? as usize,
            },
            "subset-closure" => ExampleId::SubsetClosure,
            "semiring-note" => ExampleId::SemiringNote,
            "finite-general" => ExampleId::FiniteGeneral,
            "imm1" => ExampleId::Imm1,
            "imm2" => ExampleId::Imm2,
            "imm3" => ExampleId::Imm3,
            "section4-imm" => ExampleId::Section4Imm,
            "zmod" => ExampleId::Zmod(int_param(params, "n", 5)?),
            "matrix-zmod" => ExampleId::MatrixZmod {
                modulus: int_param(params, "n", 3)?,
                dim: int_param(params, "dim", 2)? as usize,
            },
            "rationals-ring" => ExampleId::RationalsRing,
            other => return Err(ExampleError::Unknown(other.to_string())),
        };
        id.validate()?;
        Ok(id)
    }

    fn validate(&self) -> Result<(), ExampleError> {
        let bad = |m: &str| Err(ExampleError::InvalidParameter(m.to_string()));
        match self {
            ExampleId::IntervalAlpha(a) if *a <= qi(1) => bad("alpha must exceed 1"),
            ExampleId::ModOdd(0) => bad("n must be at least 1"),
            ExampleId::PlanarK { k, region: true } if *k < qi(0) => {
                bad("the region carrier needs K >= 0")
            }
            ExampleId::RingGeneric { modulus, dim } if modulus % 2 == 0 || *dim == 0 => {
                bad("ring-generic needs an odd modulus and a positive dimension")
            }
            ExampleId::Zmod(0) => bad("n must be positive"),
            ExampleId::MatrixZmod { modulus: 0, .. } | ExampleId::MatrixZmod { dim: 0, .. } => {
                bad("modulus and dimension must be positive")
            }
            _ => Ok(()),
        }
    }

    /// Stable display name, with parameters.
    pub fn name(&self) -> String {
        match self {
            ExampleId::Interval => "interval".into(),
            ExampleId::IntervalThird => "interval-third".into(),
            ExampleId::IntervalAlpha(a) => format!("interval-alpha(alpha={})", crate::model::format_rational(a)),
            ExampleId::SymmetricInterval => "symmetric-interval".into(),
            ExampleId::ReciprocalInterval => "reciprocal-interval".into(),
            ExampleId::ThreeElement => "three-element".into(),
            ExampleId::ModOdd(n) => format!("mod-odd(n={n})"),
            ExampleId::Dyadic => "dyadic".into(),
            ExampleId::FieldLine => "field-line".into(),
            ExampleId::Planar => "planar".into(),
            ExampleId::PlanarK { k, region } => format!(
                "planar-K(k={},region={region})",
                crate::model::format_rational(k)
            ),
            ExampleId::RingGeneric { modulus, dim } => format!("ring-generic(n={modulus},dim={dim})"),
            ExampleId::SubsetClosure => "subset-closure".into(),
            ExampleId::SemiringNote => "semiring-note".into(),
            ExampleId::FiniteGeneral => "finite-general".into(),
            ExampleId::Imm1 => "imm1".into(),
            ExampleId::Imm2 => "imm2".into(),
            ExampleId::Imm3 => "imm3".into(),
            ExampleId::Section4Imm => "section4-imm".into(),
            ExampleId::Zmod(n) => format!("Z{n}"),
            ExampleId::MatrixZmod { modulus, dim } => format!("M{dim}(Z{modulus})"),
            ExampleId::RationalsRing => "rationals-ring".into(),
        }
    }
}

fn formula_mobi(
    name: String,
    domain: Domain,
    formula: Formula,
    constants: [Value; 3],
) -> Result<Structure, ExampleError> {
    let [zero, half, one] = constants;
    let m = MobiStructure::new(name, Carrier::rational(domain), OpImpl::Formula(formula), zero, half, one)?;
    Ok(Structure::Mobi(m))
}

fn rat(n: i64, d: i64) -> Value {
    Value::Rat(q(n, d))
}

fn point(x: Q, y: Q) -> Value {
    Value::Pair(x, y)
}

fn planar_constants() -> [Value; 3] {
    [point(qi(0), qi(0)), point(q(1, 2), qi(0)), point(qi(1), qi(0))]
}

/// Builds a table over `labels` from rows written with those labels.
fn label_table(labels: &[&str], arity: usize, rows: &[&str]) -> Table {
    let cells: Vec<u32> = rows
        .iter()
        .flat_map(|r| r.split_whitespace())
        .map(|l| labels.iter().position(|x| *x == l).expect("fixture label") as u32)
        .collect();
    Table::new(labels.len(), arity, cells).expect("fixture table shape")
}

const FIVE: [&str; 5] = ["α", "0", "½", "1", "β"];

fn five_element_imm(name: &str, oplus: &[&str], dot: &[&str]) -> Result<Structure, ExampleError> {
    let inv = label_table(&FIVE, 1, &["β 1 ½ 0 α"]);
    let b = ImmStructure::new(
        name,
        Carrier::finite(FIVE),
        OpImpl::Table(inv),
        OpImpl::Table(label_table(&FIVE, 2, oplus)),
        OpImpl::Table(label_table(&FIVE, 2, dot)),
        Value::Label(3),
    )?;
    Ok(Structure::Imm(b))
}

pub fn make_example(id: &ExampleId) -> Result<Structure, ExampleError> {
    id.validate()?;
    let name = id.name();
    match id {
        ExampleId::Interval => formula_mobi(
            name,
            Domain::unit_interval(),
            Formula::Affine,
            [rat(0, 1), rat(1, 2), rat(1, 1)],
        ),
        ExampleId::IntervalThird => formula_mobi(
            name,
            Domain::unit_interval(),
            Formula::Third,
            [rat(0, 1), rat(1, 3), rat(1, 1)],
        ),
        ExampleId::IntervalAlpha(alpha) => formula_mobi(
            name,
            Domain::unit_interval(),
            Formula::Alpha(alpha.clone()),
            [rat(0, 1), Value::Rat(alpha.recip()), rat(1, 1)],
        ),
        ExampleId::SymmetricInterval => formula_mobi(
            name,
            Domain::Interval { lo: qi(-1), hi: qi(1) },
            Formula::Symmetric,
            [rat(-1, 1), rat(0, 1), rat(1, 1)],
        ),
        ExampleId::ReciprocalInterval => formula_mobi(
            name,
            Domain::ProjectiveHalfLine,
            Formula::Reciprocal,
            [Value::Infinity, rat(2, 1), rat(1, 1)],
        ),
        ExampleId::ThreeElement => {
            let labels = ["0", "½", "1"];
            let p = label_table(
                &labels,
                3,
                &[
                    // p(a, b, c) with a the outer index, then b, then c
                    "0 0 0   0 1 ½   0 ½ 1",
                    "½ ½ ½   1 ½ 0   0 ½ 1",
                    "1 1 1   ½ 0 1   0 ½ 1",
                ],
            );
            let m = MobiStructure::new(
                name,
                Carrier::finite(labels),
                OpImpl::Table(p),
                Value::Label(0),
                Value::Label(1),
                Value::Label(2),
            )?;
            Ok(Structure::Mobi(m))
        }
        ExampleId::ModOdd(n) => {
            let size = 2 * *n as usize + 1;
            let labels: Vec<String> = (0..size).map(|i| i.to_string()).collect();
            // a − ba + bc, kept nonnegative before reducing
            let p = Table::from_fn(size, 3, |v| {
                let (a, b, c) = (v[0], v[1], v[2]);
                (a + b * (size - a) + b * c) % size
            });
            let m = MobiStructure::new(
                name,
                Carrier::Finite(labels),
                OpImpl::Table(p),
                Value::Label(0),
                Value::Label((*n as usize + 1) % size),
                Value::Label(1 % size),
            )?;
            Ok(Structure::Mobi(m))
        }
        ExampleId::Dyadic => {
            formula_mobi(name, Domain::Dyadic, Formula::Affine, [rat(0, 1), rat(1, 2), rat(1, 1)])
        }
        ExampleId::FieldLine => {
            formula_mobi(name, Domain::Rationals, Formula::Affine, [rat(0, 1), rat(1, 2), rat(1, 1)])
        }
        ExampleId::Planar => formula_mobi(
            name,
            Domain::Region { k: qi(1) },
            Formula::Planar(qi(1)),
            planar_constants(),
        ),
        ExampleId::PlanarK { k, region } => {
            let domain = if *region { Domain::Region { k: k.clone() } } else { Domain::Plane };
            formula_mobi(name, domain, Formula::Planar(k.clone()), planar_constants())
        }
        ExampleId::RingGeneric { modulus, dim } => {
            let r = matrix_ring(&format!("T{dim}(Z{modulus})"), *modulus, *dim, MatrixShape::UpperTriangular)?;
            Ok(Structure::Mobi(transforms::ring_to_mobi(&r)?.with_name(name)))
        }
        ExampleId::SubsetClosure => {
            let r = matrix_ring("M2(Z3)", 3, 2, MatrixShape::Full)?;
            let pos = |s: &str| Value::Label(r.carrier().position(s).expect("matrix label"));
            let task = ClosureTask {
                generators: vec![pos("[0,0;0,0]"), pos("[2,0;0,2]"), pos("[1,0;0,1]"), pos("[1,0;0,0]")],
                ambient: r,
                cap: DEFAULT_CLOSURE_CAP,
            };
            match closure_generate(&task)? {
                ClosureResult::Closed(m) => Ok(Structure::Mobi(m.with_name(name))),
                ClosureResult::CapExceeded { cap, .. } => Err(ExampleError::InvalidParameter(format!(
                    "closure did not stabilize within {cap} elements"
                ))),
            }
        }
        ExampleId::SemiringNote => Err(ExampleError::Unsupported(
            "semiring-based mobi algebras are documented only; no fixture is built".into(),
        )),
        ExampleId::FiniteGeneral => Err(ExampleError::Stub(
            "finite-general is an operation, not a fixture: use transforms::half_inverse_by_bijection \
             on any finite mobi to obtain the inverse of its half"
                .into(),
        )),
        ExampleId::Imm1 => five_element_imm(
            "imm1",
            &["α β 1 0 ½", "β 0 α ½ 1", "1 α ½ β 0", "0 ½ β 1 α", "½ 1 0 α β"],
            &["1 0 β α ½", "0 0 0 0 0", "β 0 α ½ 1", "α 0 ½ 1 β", "½ 0 1 β α"],
        ),
        ExampleId::Imm2 => five_element_imm(
            "imm2",
            &["α ½ ½ α ½", "½ 0 ½ ½ β", "½ ½ ½ ½ ½", "α ½ ½ 1 ½", "½ β ½ ½ β"],
            &["α 0 ½ α β", "0 0 0 0 0", "½ 0 ½ ½ β", "α 0 ½ 1 β", "β 0 β β 0"],
        ),
        ExampleId::Imm3 => five_element_imm(
            "imm3",
            &["α ½ ½ ½ ½", "½ 0 ½ ½ ½", "½ ½ ½ ½ ½", "½ ½ ½ 1 ½", "½ ½ ½ ½ β"],
            &["β 0 ½ α 1", "0 0 0 0 0", "½ 0 ½ ½ ½", "α 0 ½ 1 β", "1 0 ½ β α"],
        ),
        ExampleId::Section4Imm => {
            let labels = ["0", "½", "1"];
            let b = ImmStructure::new(
                name,
                Carrier::finite(labels),
                OpImpl::Table(label_table(&labels, 1, &["1 ½ 0"])),
                OpImpl::Table(label_table(&labels, 2, &["0 ½ ½", "½ ½ ½", "½ ½ 1"])),
                OpImpl::Table(label_table(&labels, 2, &["0 0 0", "0 ½ ½", "0 ½ 1"])),
                Value::Label(2),
            )?;
            Ok(Structure::Imm(b))
        }
        ExampleId::Zmod(n) => Ok(Structure::Ring(zmod(*n)?)),
        ExampleId::MatrixZmod { modulus, dim } => {
            Ok(Structure::Ring(matrix_ring(&name, *modulus, *dim, MatrixShape::Full)?))
        }
        ExampleId::RationalsRing => Ok(Structure::Ring(rationals_ring())),
    }
}

/// `(ℚ, +, ·, −, 0, 1)` as exact formulas.
pub fn rationals_ring() -> RingStructure {
    RingStructure::new(
        "rationals-ring",
        Carrier::rational(Domain::Rationals),
        OpImpl::Formula(Formula::FieldAdd),
        OpImpl::Formula(Formula::FieldMul),
        OpImpl::Formula(Formula::FieldNeg),
        Value::int(0),
        Value::int(1),
    )
    .expect("rational constants are members")
}

/// The mobi examples with exact-rational carriers, in presentation order.
pub fn rational_mobi_examples() -> Vec<ExampleId> {
    vec![
        ExampleId::Interval,
        ExampleId::IntervalThird,
        ExampleId::IntervalAlpha(qi(3)),
        ExampleId::IntervalAlpha(q(5, 4)),
        ExampleId::IntervalAlpha(qi(7)),
        ExampleId::SymmetricInterval,
        ExampleId::ReciprocalInterval,
        ExampleId::Dyadic,
        ExampleId::FieldLine,
        ExampleId::Planar,
        ExampleId::PlanarK { k: qi(2), region: true },
        ExampleId::PlanarK { k: q(1, 4), region: true },
        ExampleId::PlanarK { k: qi(-1), region: false },
        ExampleId::PlanarK { k: qi(3), region: false },
    ]
}

/// The finite mobi examples.
pub fn finite_mobi_examples() -> Vec<ExampleId> {
    vec![
        ExampleId::ThreeElement,
        ExampleId::ModOdd(1),
        ExampleId::ModOdd(2),
        ExampleId::ModOdd(3),
        ExampleId::ModOdd(4),
        ExampleId::RingGeneric { modulus: 3, dim: 1 },
        ExampleId::RingGeneric { modulus: 3, dim: 2 },
        ExampleId::SubsetClosure,
    ]
}

/// Every finite table-backed fixture, used for mutation testing and the
/// derived-identity suite.
pub fn finite_fixtures() -> Vec<ExampleId> {
    let mut ids = finite_mobi_examples();
    ids.extend([
        ExampleId::Imm1,
        ExampleId::Imm2,
        ExampleId::Imm3,
        ExampleId::Section4Imm,
        ExampleId::Zmod(3),
        ExampleId::Zmod(5),
        ExampleId::Zmod(7),
        ExampleId::Zmod(9),
    ]);
    ids
}
