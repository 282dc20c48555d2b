//! Least subsets of a ring closed under `p(x,y,z) = (1 − y)x + yz`.

use std::collections::HashSet;

use crate::model::{is_dyadic_value, Carrier, MobiStructure, ModelError, OpImpl, RingStructure, Table, Value};

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct ClosureTask {
    pub ambient: RingStructure,
    pub generators: Vec<Value>,
    pub cap: usize,
}

#[derive(Clone, Debug)]
pub enum ClosureResult {
    Closed(MobiStructure),
    /// The fixpoint did not stabilize within the cap; `partial` holds every
    /// element generated so far, in insertion order.
    CapExceeded { partial: Vec<Value>, cap: usize },
}

fn ring_p(r: &RingStructure, x: &Value, y: &Value, z: &Value) -> Result<Value, ModelError> {
    r.add(&r.sub(x, &r.mul(y, x)?)?, &r.mul(y, z)?)
}

/// Semi-naive fixpoint iteration: each round only evaluates triples that
/// involve an element found in the previous round.
pub fn closure_generate(task: &ClosureTask) -> Result<ClosureResult, ModelError> {
    let r = &task.ambient;
    let carrier = r.carrier();
    if let Some(bad) = task.generators.iter().find(|g| !carrier.contains(g)) {
        return Err(ModelError::NonMember(carrier.render(bad)));
    }
    let mut half = None;
    for g in &task.generators {
        if r.add(g, g)? == *r.one() {
            half = Some(g.clone());
        }
    }
    let half = half.ok_or_else(|| {
        ModelError::InvalidParameter("generators must contain the inverse of 1+1".into())
    })?;
    for (role, c) in [("zero", r.zero()), ("one", r.one())] {
        if !task.generators.contains(c) {
            return Err(ModelError::InvalidParameter(format!("generators must contain {role}")));
        }
    }

    let mut elements: Vec<Value> = Vec::new();
    let mut seen = HashSet::new();
    for g in &task.generators {
        if seen.insert(g.clone()) {
            elements.push(g.clone());
        }
    }
    let mut done = 0;
    while done < elements.len() {
        let m = elements.len();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if i < done && j < done && k < done {
                        continue;
                    }
                    let v = ring_p(r, &elements[i], &elements[j], &elements[k])?;
                    if seen.insert(v.clone()) {
                        elements.push(v);
                        if elements.len() > task.cap {
                            return Ok(ClosureResult::CapExceeded { partial: elements, cap: task.cap });
                        }
                    }
                }
            }
        }
        done = m;
    }

    let labels: Vec<String> = elements.iter().map(|v| carrier.render(v)).collect();
    let position = |v: &Value| elements.iter().position(|e| e == v).expect("closed set");
    let n = elements.len();
    let table = Table::try_from_fn(n, 3, |idx| {
        ring_p(r, &elements[idx[0]], &elements[idx[1]], &elements[idx[2]]).map(|v| position(&v))
    })?;
    let m = MobiStructure::new(
        format!("closure in {}", r.name()),
        Carrier::Finite(labels),
        OpImpl::Table(table),
        Value::Label(position(r.zero())),
        Value::Label(position(&half)),
        Value::Label(position(r.one())),
    )?;
    Ok(ClosureResult::Closed(m))
}

/// Certificate for partial dyadic closures: every element is a rational
/// whose denominator is a power of two.
pub fn all_dyadic(values: &[Value]) -> bool {
    values.iter().all(is_dyadic_value)
}
