//! Conversions between mobi algebras, IMM algebras and rings.

pub mod equality;
pub mod solve;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::axioms::{laws, run_law, AxiomResult, Mode, Report, Status};
use crate::model::{
    Carrier, Formula, ImmStructure, MobiStructure, ModelError, OpImpl, Recipe, RingStructure,
    Structure, Value,
};
pub use equality::{first_difference, structures_equal, Difference};
pub use solve::{imm_star_to_mobi, mobi_dagger_search, solve_p_equation, DaggerOutcome, DAGGER_NODE_CAP, EquationForm, SolutionSet};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("no inverse for {0}")]
    NoInverse(String),
    #[error("{0} is not the inverse of the half")]
    InvalidWitness(String),
    #[error("the equation has no solution at (a, b, c) = ({}, {}, {})", .triple[0], .triple[1], .triple[2])]
    Unsolvable { triple: [String; 3] },
    #[error("the equation has {count} solutions at (a, b, c) = ({}, {}, {}); oplus is not cancellative", .triple[0], .triple[1], .triple[2])]
    NotCancellative { triple: [String; 3], count: usize },
    #[error("{0} needs a finite carrier")]
    InfiniteCarrier(&'static str),
    #[error("{element} has two distinct inverses {first} and {second}")]
    InverseNotUnique { element: String, first: String, second: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A certified two-sided inverse in a monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseWitness {
    pub element: String,
    pub inverse: String,
    /// `element · inverse` and `inverse · element`, both equal to 1.
    pub products: [String; 2],
    /// Set when `element` is central: whether the inverse is central too.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_central: Option<bool>,
    #[serde(skip)]
    pub value: Value,
}

fn arc(s: Structure) -> Arc<Structure> {
    Arc::new(s)
}

/// Composite formula over `source`, tabulated when the carrier is finite.
fn derived(
    recipe: Recipe,
    source: &Arc<Structure>,
    element: Option<Value>,
) -> Result<OpImpl, ModelError> {
    let op = OpImpl::Formula(Formula::derived(recipe, source.clone(), element));
    op.materialize(recipe.name(), source.carrier())
}

/// Two-sided inverse of `e` under `mul` with unit `one`.
///
/// Finite carriers are searched exhaustively; otherwise only `candidate` is
/// certified.
fn find_inverse(
    carrier: &Carrier,
    e: &Value,
    one: &Value,
    candidate: Option<&Value>,
    mul: &dyn Fn(&Value, &Value) -> Result<Value, ModelError>,
) -> Result<Option<InverseWitness>, TransformError> {
    let certify = |x: &Value| -> Result<bool, ModelError> {
        Ok(carrier.contains(x) && mul(e, x)? == *one && mul(x, e)? == *one)
    };
    let inverse = match carrier.elements() {
        Some(elements) => {
            let mut found: Option<Value> = None;
            for x in elements {
                if certify(&x)? {
                    if let Some(first) = &found {
                        return Err(TransformError::InverseNotUnique {
                            element: carrier.render(e),
                            first: carrier.render(first),
                            second: carrier.render(&x),
                        });
                    }
                    found = Some(x);
                }
            }
            found
        }
        None => match candidate {
            Some(c) if certify(c)? => Some(c.clone()),
            _ => None,
        },
    };
    let Some(inv) = inverse else { return Ok(None) };
    let inverse_central = match carrier.elements() {
        Some(elements) => {
            let elements: Vec<Value> = elements.collect();
            let commutes = |a: &Value| -> Result<bool, ModelError> {
                for x in &elements {
                    if mul(a, x)? != mul(x, a)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            if commutes(e)? {
                Some(commutes(&inv)?)
            } else {
                None
            }
        }
        None => None,
    };
    Ok(Some(InverseWitness {
        element: carrier.render(e),
        inverse: carrier.render(&inv),
        products: [carrier.render(&mul(e, &inv)?), carrier.render(&mul(&inv, e)?)],
        inverse_central,
        value: inv,
    }))
}

/// Exact reciprocal, the natural inverse candidate on rational domains.
fn reciprocal_candidate(v: &Value) -> Option<Value> {
    match v {
        Value::Rat(r) if !num::Zero::is_zero(r) => Some(Value::Rat(r.recip())),
        _ => None,
    }
}

/// `ā = p(1,a,0)`, `a·b = p(0,a,b)`, `a⊕b = p(a,½,b)`.
pub fn derive_imm_from_mobi(m: &MobiStructure) -> Result<ImmStructure, TransformError> {
    let source = arc(Structure::Mobi(m.clone()));
    Ok(ImmStructure::new(
        format!("imm({})", m.name()),
        m.carrier().clone(),
        derived(Recipe::MobiInv, &source, None)?,
        derived(Recipe::MobiOplus, &source, None)?,
        derived(Recipe::MobiDot, &source, None)?,
        m.one().clone(),
    )?)
}

/// The `∘` operation of an IMM, as the complement of `b̄·ā`, with the
/// identity `(a∘b)⊕(b·a) = b⊕a` checked on all pairs (or samples).
pub fn derive_circ(b: &ImmStructure) -> Result<(OpImpl, AxiomResult), TransformError> {
    let source = arc(Structure::Imm(b.clone()));
    let circ = derived(Recipe::ImmCirc, &source, None)?;
    let law = laws::Law::<(ImmStructure, OpImpl)>::new("circ-dot-oplus", &["a", "b"], |(b, circ), v| {
        let (x, y) = (&v[0], &v[1]);
        let xy = circ.apply("circ", b.carrier(), &[x.clone(), y.clone()])?;
        Ok(b.oplus(&xy, &b.dot(y, x)?)? == b.oplus(y, x)?)
    });
    let ctx = (b.clone(), circ.clone());
    let result = match Mode::for_carrier(b.carrier(), None, vec![b.one().clone()]) {
        Ok(mode) => run_law(&ctx, b.carrier(), &law, &mode, 0),
        Err(_) => AxiomResult::skipped(law.id, law.vars, "no sampling spec"),
    };
    Ok((circ, result))
}

/// Two-sided `·`-inverse of `e` in an IMM.
pub fn monoid_inverse(
    b: &ImmStructure,
    e: &Value,
    candidate: Option<&Value>,
) -> Result<Option<InverseWitness>, TransformError> {
    if !b.carrier().is_finite() && candidate.is_none() {
        return Err(TransformError::InfiniteCarrier("monoid inverse search without a candidate"));
    }
    find_inverse(b.carrier(), e, b.one(), candidate, &|x, y| b.dot(x, y))
}

/// `(1̄⊕1)⁻¹`, searched on finite carriers and tried as an exact reciprocal
/// on rational ones.
pub fn half_inverse(b: &ImmStructure) -> Result<Option<InverseWitness>, TransformError> {
    let half = b.half()?;
    let candidate = reciprocal_candidate(&half);
    find_inverse(b.carrier(), &half, b.one(), candidate.as_ref(), &|x, y| b.dot(x, y))
}

fn require_half_inverse(b: &ImmStructure) -> Result<Value, TransformError> {
    match half_inverse(b)? {
        Some(w) => Ok(w.value),
        None => {
            Err(TransformError::NoInverse(format!("1̄⊕1 = {}", b.carrier().render(&b.half()?))))
        }
    }
}

/// `a+b = 2·(a⊕b)`, `−a = 2̄·a`, zero `1̄`, with `2 = (1̄⊕1)⁻¹`.
pub fn imm_to_ring(b: &ImmStructure) -> Result<RingStructure, TransformError> {
    let two = require_half_inverse(b)?;
    let source = arc(Structure::Imm(b.clone()));
    Ok(RingStructure::new(
        format!("ring({})", b.name()),
        b.carrier().clone(),
        derived(Recipe::ImmRingAdd, &source, Some(two.clone()))?,
        derived(Recipe::ImmDot, &source, None)?,
        derived(Recipe::ImmRingNeg, &source, Some(two))?,
        b.zero()?,
        b.one().clone(),
    )?)
}

/// `(1+1)⁻¹` in a ring.
pub fn ring_half(r: &RingStructure) -> Result<Option<InverseWitness>, TransformError> {
    let two = r.two()?;
    let candidate = reciprocal_candidate(&two);
    find_inverse(r.carrier(), &two, r.one(), candidate.as_ref(), &|x, y| r.mul(x, y))
}

fn require_ring_half(r: &RingStructure) -> Result<Value, TransformError> {
    match ring_half(r)? {
        Some(w) => Ok(w.value),
        None => Err(TransformError::NoInverse(format!(
            "1+1 = {} in {}",
            r.carrier().render(&r.two()?),
            r.name()
        ))),
    }
}

/// `ā = 1 − a`, `a⊕b = (1+1)⁻¹·(a+b)`.
pub fn ring_to_imm(r: &RingStructure) -> Result<ImmStructure, TransformError> {
    let half = require_ring_half(r)?;
    let source = arc(Structure::Ring(r.clone()));
    Ok(ImmStructure::new(
        format!("imm({})", r.name()),
        r.carrier().clone(),
        derived(Recipe::RingInv, &source, None)?,
        derived(Recipe::RingOplus, &source, Some(half))?,
        derived(Recipe::RingMul, &source, None)?,
        r.one().clone(),
    )?)
}

/// `p(a,b,c) = (1̄⊕1)⁻¹·((b̄·a)⊕(b·c))`.
pub fn imm_to_mobi_via_half_inverse(b: &ImmStructure) -> Result<MobiStructure, TransformError> {
    let two = require_half_inverse(b)?;
    let source = arc(Structure::Imm(b.clone()));
    Ok(MobiStructure::new(
        format!("mobi({})", b.name()),
        b.carrier().clone(),
        derived(Recipe::ImmMobiP, &source, Some(two))?,
        b.zero()?,
        b.half()?,
        b.one().clone(),
    )?)
}

/// `a·b = p(0,a,b)`, `a+b = 2·p(a,½,b)`, valid when `two` inverts `½`.
pub fn mobi_to_ring(m: &MobiStructure, two: &Value) -> Result<RingStructure, TransformError> {
    let carrier = m.carrier();
    let ok = carrier.contains(two)
        && m.dot(m.half(), two)? == *m.one()
        && m.dot(two, m.half())? == *m.one();
    if !ok {
        return Err(TransformError::InvalidWitness(carrier.render(two)));
    }
    let source = arc(Structure::Mobi(m.clone()));
    Ok(RingStructure::new(
        format!("ring({})", m.name()),
        carrier.clone(),
        derived(Recipe::MobiRingAdd, &source, Some(two.clone()))?,
        derived(Recipe::MobiDot, &source, None)?,
        derived(Recipe::MobiRingNeg, &source, Some(two.clone()))?,
        m.zero().clone(),
        m.one().clone(),
    )?)
}

/// `h⁻¹(1)` for `h(x) = p(0,½,x)`, when `h` is a bijection.
pub fn half_inverse_by_bijection(m: &MobiStructure) -> Result<Option<Value>, TransformError> {
    let elements: Vec<Value> = m
        .carrier()
        .elements()
        .ok_or(TransformError::InfiniteCarrier("half_inverse_by_bijection"))?
        .collect();
    let image: Vec<Value> =
        elements.iter().map(|x| m.dot(m.half(), x)).collect::<Result<_, _>>()?;
    for (i, y) in image.iter().enumerate() {
        if image[..i].contains(y) {
            return Ok(None);
        }
    }
    Ok(image.iter().position(|y| y == m.one()).map(|i| elements[i].clone()))
}

/// `p(a,b,c) = a + bc − ba`, `½ = (1+1)⁻¹`.
pub fn ring_to_mobi(r: &RingStructure) -> Result<MobiStructure, TransformError> {
    let half = require_ring_half(r)?;
    let source = arc(Structure::Ring(r.clone()));
    Ok(MobiStructure::new(
        format!("mobi({})", r.name()),
        r.carrier().clone(),
        derived(Recipe::RingMobiP, &source, None)?,
        r.zero().clone(),
        half,
        r.one().clone(),
    )?)
}

/// The `·`-inverse of `½` in a mobi: by bijection on finite carriers, by
/// exact reciprocal otherwise.
pub fn mobi_two(m: &MobiStructure) -> Result<Value, TransformError> {
    let found = if m.carrier().is_finite() {
        half_inverse_by_bijection(m)?
    } else {
        reciprocal_candidate(m.half()).filter(|c| {
            m.carrier().contains(c)
                && m.dot(m.half(), c).ok().as_ref() == Some(m.one())
                && m.dot(c, m.half()).ok().as_ref() == Some(m.one())
        })
    };
    found.ok_or_else(|| TransformError::NoInverse(format!("½ = {}", m.carrier().render(m.half()))))
}

fn leg(name: &str, left: &Structure, right: &Structure) -> Result<AxiomResult, TransformError> {
    let diff = first_difference(left, right, None)?;
    Ok(AxiomResult {
        axiom: name.to_string(),
        status: if diff.is_none() { Status::Pass } else { Status::Fail },
        variables: vec![],
        witness: diff.clone().map(|d| d.witness).unwrap_or_default(),
        checked: 1,
        note: diff.map(|d| d.note),
        witness_values: vec![],
    })
}

/// Certifies the ring/mobi correspondence table-for-table (or on samples).
///
/// Rings: ring→mobi→ring, and ring→IMM→mobi against ring→mobi. Mobi
/// algebras: mobi→ring→mobi, and mobi→IMM→ring against mobi→ring. IMM
/// algebras: IMM→mobi→IMM.
pub fn roundtrip_check(s: &Structure) -> Result<Report, TransformError> {
    let mut results = Vec::new();
    match s {
        Structure::Ring(r) => {
            let m = ring_to_mobi(r)?;
            let back = mobi_to_ring(&m, &r.two()?)?;
            results.push(leg("ring->mobi->ring", s, &Structure::Ring(back))?);
            let via_imm = imm_to_mobi_via_half_inverse(&ring_to_imm(r)?)?;
            results.push(leg(
                "ring->imm->mobi = ring->mobi",
                &Structure::Mobi(via_imm),
                &Structure::Mobi(m.clone()),
            )?);
            let again = ring_to_mobi(&mobi_to_ring(&m, &r.two()?)?)?;
            results.push(leg("mobi->ring->mobi", &Structure::Mobi(m), &Structure::Mobi(again))?);
        }
        Structure::Mobi(m) => {
            let two = mobi_two(m)?;
            let r = mobi_to_ring(m, &two)?;
            let back = ring_to_mobi(&r)?;
            results.push(leg("mobi->ring->mobi", s, &Structure::Mobi(back))?);
            let via_imm = imm_to_ring(&derive_imm_from_mobi(m)?)?;
            results.push(leg(
                "mobi->imm->ring = mobi->ring",
                &Structure::Ring(via_imm),
                &Structure::Ring(r.clone()),
            )?);
            let again = mobi_to_ring(&ring_to_mobi(&r)?, &two)?;
            results.push(leg("ring->mobi->ring", &Structure::Ring(r), &Structure::Ring(again))?);
        }
        Structure::Imm(b) | Structure::ImmStar(b) => {
            let m = imm_star_to_mobi(b)?;
            let back = derive_imm_from_mobi(&m)?;
            results.push(leg("imm->mobi->imm", &Structure::Imm(b.clone()), &Structure::Imm(back))?);
            let via_inverse = imm_to_mobi_via_half_inverse(b)?;
            results.push(leg(
                "equation path = inverse path",
                &Structure::Mobi(m),
                &Structure::Mobi(via_inverse),
            )?);
        }
    }
    let mode = if s.carrier().is_finite() { "exhaustive" } else { "sampled" };
    Ok(Report::from_results(s, "roundtrip", mode, results))
}
