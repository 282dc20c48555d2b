//! JSON interchange documents.
//!
//! Layout (keys emitted in this order, compact, trailing newline):
//!
//! ```text
//! {"version":1,"kind":"mobi","name":"...",
//!  "carrier":{"finite":["0","½","1"]} | {"rational":{"domain":"interval","params":{"lo":"0/1","hi":"1/1"}}},
//!  "sampling":{"seed":..,"count":..,"bound":..},
//!  "constants":{"zero":"0","half":"½","one":"1"},
//!  "ops":{"p":{"table":[[[..]]]}} | {"p":{"formula":"interval","params":{}}}}
//! ```
//!
//! Elements of finite carriers are written as their labels, rationals as
//! `"p/q"`, the projective point as `"1/0"` and planar points as two-element
//! arrays of rationals.

use std::sync::Arc;

use serde_json::{json, Map, Value as Json};

use super::carrier::{Carrier, Domain, SampleSpec};
use super::op::{Formula, OpImpl, Recipe, Table};
use super::structure::{ImmStructure, Kind, MobiStructure, RingStructure, Structure};
use super::value::{format_rational, parse_rational, parse_scalar, Value};
use super::ModelError;

pub const VERSION: i64 = 1;

pub fn serialize_structure(s: &Structure) -> Vec<u8> {
    let mut text = serde_json::to_string(&to_json(s)).expect("json values always serialize");
    text.push('\n');
    text.into_bytes()
}

pub fn parse_structure(bytes: &[u8]) -> Result<Structure, ModelError> {
    let doc: Json = serde_json::from_slice(bytes).map_err(|e| ModelError::Json(e.to_string()))?;
    from_json(&doc)
}

pub fn to_json(s: &Structure) -> Json {
    let carrier = s.carrier();
    let mut doc = Map::new();
    doc.insert("version".into(), json!(VERSION));
    doc.insert("kind".into(), json!(s.kind().name()));
    if !s.name().is_empty() {
        doc.insert("name".into(), json!(s.name()));
    }
    doc.insert("carrier".into(), carrier_json(carrier));
    if let Some(spec) = carrier.sampling() {
        doc.insert(
            "sampling".into(),
            json!({"seed": spec.seed, "count": spec.count, "bound": spec.bound}),
        );
    }
    let mut constants = Map::new();
    for (role, v) in s.constants() {
        constants.insert(role.into(), element_json(carrier, v));
    }
    doc.insert("constants".into(), Json::Object(constants));
    let mut ops = Map::new();
    for (name, op) in s.ops() {
        ops.insert(name.into(), op_json(carrier, op));
    }
    doc.insert("ops".into(), Json::Object(ops));
    Json::Object(doc)
}

fn carrier_json(carrier: &Carrier) -> Json {
    match carrier {
        Carrier::Finite(labels) => json!({ "finite": labels }),
        Carrier::Rational { domain, .. } => {
            let params = match domain {
                Domain::Interval { lo, hi } => {
                    json!({"lo": format_rational(lo), "hi": format_rational(hi)})
                }
                Domain::Region { k } => json!({"k": format_rational(k)}),
                _ => json!({}),
            };
            json!({"rational": {"domain": domain.name(), "params": params}})
        }
    }
}

fn element_json(carrier: &Carrier, v: &Value) -> Json {
    match v {
        Value::Pair(x, y) => json!([format_rational(x), format_rational(y)]),
        other => Json::String(carrier.render(other)),
    }
}

fn op_json(carrier: &Carrier, op: &OpImpl) -> Json {
    match op {
        OpImpl::Table(t) => json!({ "table": table_json(carrier, t, 0, 0) }),
        OpImpl::Formula(f) => {
            let params = match f {
                Formula::Alpha(alpha) => json!({"alpha": format_rational(alpha)}),
                Formula::Planar(k) => json!({"k": format_rational(k)}),
                Formula::Derived(d) => {
                    let mut m = Map::new();
                    m.insert("recipe".into(), json!(d.recipe.name()));
                    if let Some(e) = &d.element {
                        m.insert("element".into(), element_json(carrier, e));
                    }
                    m.insert("source".into(), to_json(&d.source));
                    Json::Object(m)
                }
                _ => json!({}),
            };
            json!({"formula": f.name(), "params": params})
        }
    }
}

fn table_json(carrier: &Carrier, t: &Table, depth: usize, offset: usize) -> Json {
    let n = t.size();
    if depth == t.arity() {
        return element_json(carrier, &Value::Label(t.cells()[offset] as usize));
    }
    let stride = n.pow((t.arity() - depth - 1) as u32);
    Json::Array(
        (0..n)
            .map(|i| table_json(carrier, t, depth + 1, offset + i * stride))
            .collect(),
    )
}

fn schema(msg: impl Into<String>) -> ModelError {
    ModelError::Schema(msg.into())
}

fn field<'a>(obj: &'a Map<String, Json>, key: &str, ctx: &str) -> Result<&'a Json, ModelError> {
    obj.get(key).ok_or_else(|| schema(format!("{ctx} is missing key {key:?}")))
}

fn object<'a>(v: &'a Json, ctx: &str) -> Result<&'a Map<String, Json>, ModelError> {
    v.as_object().ok_or_else(|| schema(format!("{ctx} must be an object")))
}

fn string<'a>(v: &'a Json, ctx: &str) -> Result<&'a str, ModelError> {
    v.as_str().ok_or_else(|| schema(format!("{ctx} must be a string")))
}

fn reject_unknown(obj: &Map<String, Json>, allowed: &[&str], ctx: &str) -> Result<(), ModelError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(format!("{ctx} has unexpected key {k:?}"))),
        None => Ok(()),
    }
}

pub fn from_json(doc: &Json) -> Result<Structure, ModelError> {
    let obj = object(doc, "document")?;
    reject_unknown(
        obj,
        &["version", "kind", "name", "carrier", "sampling", "constants", "ops"],
        "document",
    )?;
    let version = field(obj, "version", "document")?
        .as_i64()
        .ok_or_else(|| schema("version must be an integer"))?;
    if version != VERSION {
        return Err(ModelError::UnsupportedVersion(version));
    }
    let kind_name = string(field(obj, "kind", "document")?, "kind")?;
    let kind = Kind::from_name(kind_name)
        .ok_or_else(|| schema(format!("unknown structure kind {kind_name:?}")))?;
    let name = match obj.get("name") {
        Some(v) => string(v, "name")?.to_string(),
        None => String::new(),
    };
    let sampling = match obj.get("sampling") {
        Some(v) => Some(
            serde_json::from_value::<SampleSpec>(v.clone())
                .map_err(|e| schema(format!("sampling: {e}")))?,
        ),
        None => None,
    };
    let carrier = parse_carrier(field(obj, "carrier", "document")?, sampling)?;

    let constants = object(field(obj, "constants", "document")?, "constants")?;
    let ops = object(field(obj, "ops", "document")?, "ops")?;
    let (roles, op_names): (&[&str], &[&str]) = match kind {
        Kind::Mobi => (&["zero", "half", "one"], &["p"]),
        Kind::Imm | Kind::ImmStar => (&["one"], &["inv", "oplus", "dot"]),
        Kind::Ring => (&["zero", "one"], &["add", "mul", "neg"]),
    };
    reject_unknown(constants, roles, "constants")?;
    if let Some(k) = ops.keys().find(|k| !op_names.contains(&k.as_str())) {
        return Err(ModelError::UnknownOp(k.clone()));
    }
    let constant = |role: &str| -> Result<Value, ModelError> {
        let v = field(constants, role, "constants")?;
        let e = parse_element(&carrier, v)?;
        if carrier.contains(&e) {
            Ok(e)
        } else {
            Err(ModelError::ConstantNotInCarrier { role: role.into(), value: e.to_string() })
        }
    };
    let op = |name: &str, arity: usize| -> Result<OpImpl, ModelError> {
        parse_op(&carrier, field(ops, name, "ops")?, arity, name)
    };

    Ok(match kind {
        Kind::Mobi => Structure::Mobi(MobiStructure::new(
            name,
            carrier.clone(),
            op("p", 3)?,
            constant("zero")?,
            constant("half")?,
            constant("one")?,
        )?),
        Kind::Imm | Kind::ImmStar => {
            let b = ImmStructure::new(
                name,
                carrier.clone(),
                op("inv", 1)?,
                op("oplus", 2)?,
                op("dot", 2)?,
                constant("one")?,
            )?;
            if kind == Kind::Imm {
                Structure::Imm(b)
            } else {
                Structure::ImmStar(b)
            }
        }
        Kind::Ring => Structure::Ring(RingStructure::new(
            name,
            carrier.clone(),
            op("add", 2)?,
            op("mul", 2)?,
            op("neg", 1)?,
            constant("zero")?,
            constant("one")?,
        )?),
    })
}

fn parse_carrier(v: &Json, sampling: Option<SampleSpec>) -> Result<Carrier, ModelError> {
    let obj = object(v, "carrier")?;
    if obj.len() != 1 {
        return Err(schema("carrier must have exactly one of \"finite\" or \"rational\""));
    }
    if let Some(labels) = obj.get("finite") {
        if sampling.is_some() {
            return Err(schema("sampling applies only to rational carriers"));
        }
        let labels = labels
            .as_array()
            .ok_or_else(|| schema("finite carrier must be an array of labels"))?
            .iter()
            .map(|l| string(l, "carrier label").map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        if labels.is_empty() {
            return Err(schema("finite carrier must not be empty"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
        return Ok(Carrier::Finite(labels));
    }
    let spec = object(field(obj, "rational", "carrier")?, "rational carrier")?;
    reject_unknown(spec, &["domain", "params"], "rational carrier")?;
    let domain_name = string(field(spec, "domain", "rational carrier")?, "domain")?;
    let empty = Map::new();
    let params = match spec.get("params") {
        Some(p) => object(p, "domain params")?,
        None => &empty,
    };
    let rat = |key: &str| -> Result<_, ModelError> {
        parse_rational(string(field(params, key, "domain params")?, key)?)
    };
    let domain = match domain_name {
        "interval" => {
            reject_unknown(params, &["lo", "hi"], "interval params")?;
            let (lo, hi) = (rat("lo")?, rat("hi")?);
            if lo > hi {
                return Err(ModelError::InvalidParameter("interval lo exceeds hi".into()));
            }
            Domain::Interval { lo, hi }
        }
        "region" => {
            reject_unknown(params, &["k"], "region params")?;
            let k = rat("k")?;
            if k < super::value::qi(0) {
                return Err(ModelError::InvalidParameter("region needs K >= 0".into()));
            }
            Domain::Region { k }
        }
        "dyadic" => Domain::Dyadic,
        "rationals" => Domain::Rationals,
        "projective-half-line" => Domain::ProjectiveHalfLine,
        "plane" => Domain::Plane,
        other => return Err(schema(format!("unknown domain {other:?}"))),
    };
    if !matches!(domain, Domain::Interval { .. } | Domain::Region { .. }) {
        reject_unknown(params, &[], "domain params")?;
    }
    Ok(Carrier::Rational { domain, sampling })
}

fn parse_element(carrier: &Carrier, v: &Json) -> Result<Value, ModelError> {
    match carrier {
        Carrier::Finite(_) => {
            let label = string(v, "element")?;
            carrier
                .position(label)
                .map(Value::Label)
                .ok_or_else(|| ModelError::UnknownLabel(label.to_string()))
        }
        Carrier::Rational { domain, .. } => {
            if domain.dimension() == 2 {
                let parts = v
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| schema("planar elements are [x, y] pairs"))?;
                let x = parse_rational(string(&parts[0], "coordinate")?)?;
                let y = parse_rational(string(&parts[1], "coordinate")?)?;
                Ok(Value::Pair(x, y))
            } else {
                parse_scalar(string(v, "element")?)
            }
        }
    }
}

fn parse_op(carrier: &Carrier, v: &Json, arity: usize, name: &str) -> Result<OpImpl, ModelError> {
    let obj = object(v, name)?;
    if let Some(t) = obj.get("table") {
        reject_unknown(obj, &["table"], name)?;
        let n = carrier
            .size()
            .ok_or_else(|| schema(format!("table op {name} needs a finite carrier")))?;
        let mut cells = Vec::with_capacity(n.pow(arity as u32));
        flatten_table(carrier, t, arity, n, name, &mut cells)?;
        return Ok(OpImpl::Table(Table::new(n, arity, cells)?));
    }
    reject_unknown(obj, &["formula", "params"], name)?;
    let formula = string(field(obj, "formula", name)?, "formula")?;
    let empty = Map::new();
    let params = match obj.get("params") {
        Some(p) => object(p, "formula params")?,
        None => &empty,
    };
    let rat = |key: &str| -> Result<_, ModelError> {
        parse_rational(string(field(params, key, "formula params")?, key)?)
    };
    let no_params = || reject_unknown(params, &[], "formula params");
    let f = match formula {
        "interval" => {
            no_params()?;
            Formula::Affine
        }
        "interval-third" => {
            no_params()?;
            Formula::Third
        }
        "interval-alpha" => {
            reject_unknown(params, &["alpha"], "formula params")?;
            let alpha = rat("alpha")?;
            if alpha <= super::value::qi(1) {
                return Err(ModelError::InvalidParameter("alpha must exceed 1".into()));
            }
            Formula::Alpha(alpha)
        }
        "symmetric-interval" => {
            no_params()?;
            Formula::Symmetric
        }
        "reciprocal-interval" => {
            no_params()?;
            Formula::Reciprocal
        }
        "planar" => {
            reject_unknown(params, &["k"], "formula params")?;
            Formula::Planar(rat("k")?)
        }
        "field-add" => {
            no_params()?;
            Formula::FieldAdd
        }
        "field-mul" => {
            no_params()?;
            Formula::FieldMul
        }
        "field-neg" => {
            no_params()?;
            Formula::FieldNeg
        }
        "derived" => {
            reject_unknown(params, &["recipe", "element", "source"], "derived params")?;
            let recipe_name = string(field(params, "recipe", "derived params")?, "recipe")?;
            let recipe = Recipe::from_name(recipe_name)
                .ok_or_else(|| schema(format!("unknown recipe {recipe_name:?}")))?;
            let source = from_json(field(params, "source", "derived params")?)?;
            if source.carrier().domain() != carrier.domain() || source.carrier().size() != carrier.size()
            {
                return Err(schema("derived source must share the carrier"));
            }
            let element = match params.get("element") {
                Some(e) => Some(parse_element(carrier, e)?),
                None => None,
            };
            if recipe.needs_element() != element.is_some() {
                return Err(schema(format!(
                    "recipe {recipe_name} {} an element parameter",
                    if recipe.needs_element() { "needs" } else { "takes no" }
                )));
            }
            Formula::derived(recipe, Arc::new(source), element)
        }
        other => return Err(ModelError::UnknownFormula(other.to_string())),
    };
    if f.arity() != arity {
        return Err(ModelError::Arity { op: name.to_string(), expected: arity, got: f.arity() });
    }
    Ok(OpImpl::Formula(f))
}

fn flatten_table(
    carrier: &Carrier,
    v: &Json,
    depth: usize,
    n: usize,
    name: &str,
    out: &mut Vec<u32>,
) -> Result<(), ModelError> {
    if depth == 0 {
        let label = v
            .as_str()
            .ok_or_else(|| ModelError::Shape(format!("table {name} entries must be labels")))?;
        let pos = carrier
            .position(label)
            .ok_or_else(|| ModelError::UnknownLabel(label.to_string()))?;
        out.push(pos as u32);
        return Ok(());
    }
    let rows = v
        .as_array()
        .filter(|rows| rows.len() == n)
        .ok_or_else(|| ModelError::Shape(format!("table {name} must nest {n}-element arrays")))?;
    for row in rows {
        flatten_table(carrier, row, depth - 1, n, name, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIVIAL: &str = r#"{"version":1,"kind":"mobi","carrier":{"finite":["e"]},"constants":{"zero":"e","half":"e","one":"e"},"ops":{"p":{"table":[[["e"]]]}}}
"#;

    #[test]
    fn trivial_document_is_canonical() {
        let s = parse_structure(TRIVIAL.as_bytes()).unwrap();
        assert_eq!(String::from_utf8(serialize_structure(&s)).unwrap(), TRIVIAL);
    }

    #[test]
    fn unknown_label_in_table() {
        let doc = TRIVIAL.replace(r#"[[["e"]]]"#, r#"[[["2"]]]"#);
        assert_eq!(
            parse_structure(doc.as_bytes()).unwrap_err(),
            ModelError::UnknownLabel("2".into())
        );
    }

    #[test]
    fn constant_outside_carrier() {
        let doc = TRIVIAL.replace(r#""half":"e""#, r#""half":"h""#);
        assert!(matches!(
            parse_structure(doc.as_bytes()),
            Err(ModelError::UnknownLabel(_))
        ));
    }

    #[test]
    fn table_shape_mismatch() {
        let doc = TRIVIAL.replace(r#"[[["e"]]]"#, r#"[["e"]]"#);
        assert!(matches!(parse_structure(doc.as_bytes()), Err(ModelError::Shape(_))));
    }

    #[test]
    fn malformed_syntax() {
        assert!(matches!(parse_structure(b"{\"version\":"), Err(ModelError::Json(_))));
    }

    #[test]
    fn rational_document_roundtrips() {
        let doc = r#"{"version":1,"kind":"mobi","carrier":{"rational":{"domain":"projective-half-line","params":{}}},"sampling":{"seed":7,"count":10,"bound":64},"constants":{"zero":"1/0","half":"2/1","one":"1/1"},"ops":{"p":{"formula":"reciprocal-interval","params":{}}}}
"#;
        let s = parse_structure(doc.as_bytes()).unwrap();
        assert_eq!(String::from_utf8(serialize_structure(&s)).unwrap(), doc);
    }

    #[test]
    fn planar_constants_are_pairs() {
        let doc = r#"{"version":1,"kind":"mobi","carrier":{"rational":{"domain":"region","params":{"k":"1/1"}}},"constants":{"zero":["0/1","0/1"],"half":["1/2","0/1"],"one":["1/1","0/1"]},"ops":{"p":{"formula":"planar","params":{"k":"1/1"}}}}
"#;
        let s = parse_structure(doc.as_bytes()).unwrap();
        let m = s.as_mobi().unwrap();
        assert_eq!(m.half(), &Value::pair(super::super::value::q(1, 2), super::super::value::qi(0)));
        assert_eq!(String::from_utf8(serialize_structure(&s)).unwrap(), doc);
    }
}
