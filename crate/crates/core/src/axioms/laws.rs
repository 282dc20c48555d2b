//! Axiom and identity tables.
//!
//! Every law is a predicate over a tuple of carrier elements; the variable
//! names double as the witness labels in reports.

use crate::model::{ImmStructure, MobiStructure, ModelError, RingStructure, Value};

pub type Outcome = Result<bool, ModelError>;

pub struct Law<C: ?Sized> {
    pub id: &'static str,
    pub vars: &'static [&'static str],
    pub holds: fn(&C, &[Value]) -> Outcome,
}

impl<C: ?Sized> Law<C> {
    pub const fn new(
        id: &'static str,
        vars: &'static [&'static str],
        holds: fn(&C, &[Value]) -> Outcome,
    ) -> Self {
        Law { id, vars, holds }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }
}

/// The IMM signature, shared by IMM structures and the derived operations of
/// a mobi so one set of laws covers both.
pub trait ImmOps {
    fn inv(&self, a: &Value) -> Result<Value, ModelError>;
    fn oplus(&self, a: &Value, b: &Value) -> Result<Value, ModelError>;
    fn dot(&self, a: &Value, b: &Value) -> Result<Value, ModelError>;
    fn unit(&self) -> Value;

    fn zero(&self) -> Result<Value, ModelError> {
        self.inv(&self.unit())
    }

    fn half(&self) -> Result<Value, ModelError> {
        self.oplus(&self.zero()?, &self.unit())
    }
}

impl ImmOps for ImmStructure {
    fn inv(&self, a: &Value) -> Result<Value, ModelError> {
        ImmStructure::inv(self, a)
    }
    fn oplus(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        ImmStructure::oplus(self, a, b)
    }
    fn dot(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        ImmStructure::dot(self, a, b)
    }
    fn unit(&self) -> Value {
        self.one().clone()
    }
}

impl ImmOps for MobiStructure {
    fn inv(&self, a: &Value) -> Result<Value, ModelError> {
        self.bar(a)
    }
    fn oplus(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        MobiStructure::oplus(self, a, b)
    }
    fn dot(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        MobiStructure::dot(self, a, b)
    }
    fn unit(&self) -> Value {
        self.one().clone()
    }
}

type M = MobiStructure;

pub fn mobi_axioms() -> Vec<Law<M>> {
    vec![
        Law::new("A1", &[], |m: &M, _| Ok(m.p(m.one(), m.half(), m.zero())? == *m.half())),
        Law::new("A2", &["a"], |m: &M, v| Ok(m.p(m.zero(), &v[0], m.one())? == v[0])),
        Law::new("A3", &["a", "b"], |m: &M, v| Ok(m.p(&v[0], &v[1], &v[0])? == v[0])),
        Law::new("A4", &["a", "b"], |m: &M, v| Ok(m.p(&v[0], m.zero(), &v[1])? == v[0])),
        Law::new("A5", &["a", "b"], |m: &M, v| Ok(m.p(&v[0], m.one(), &v[1])? == v[1])),
        Law::new("A6", &["a", "a'", "b"], |m: &M, v| {
            let (a, a2, b) = (&v[0], &v[1], &v[2]);
            Ok(a == a2 || m.p(a, m.half(), b)? != m.p(a2, m.half(), b)?)
        }),
        Law::new("A7", &["a", "c1", "c2", "c3", "b"], |m: &M, v| {
            let (a, c1, c2, c3, b) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
            let lhs = m.p(a, &m.p(c1, c2, c3)?, b)?;
            let rhs = m.p(&m.p(a, c1, b)?, c2, &m.p(a, c3, b)?)?;
            Ok(lhs == rhs)
        }),
        Law::new("A8", &["a1", "b1", "a2", "b2", "c"], |m: &M, v| {
            let (a1, b1, a2, b2, c) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
            let h = m.half();
            let lhs = m.p(&m.p(a1, c, b1)?, h, &m.p(a2, c, b2)?)?;
            let rhs = m.p(&m.p(a1, h, a2)?, c, &m.p(b1, h, b2)?)?;
            Ok(lhs == rhs)
        }),
    ]
}

/// The general medial law, with `d` in place of `½`.
pub fn full_medial() -> Law<M> {
    Law::new("full-medial", &["a1", "b1", "a2", "b2", "c", "d"], |m: &M, v| {
        let (a1, b1, a2, b2, c, d) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
        let lhs = m.p(&m.p(a1, c, b1)?, d, &m.p(a2, c, b2)?)?;
        let rhs = m.p(&m.p(a1, d, a2)?, c, &m.p(b1, d, b2)?)?;
        Ok(lhs == rhs)
    })
}

pub fn mobi_properties() -> Vec<Law<M>> {
    vec![
        Law::new("P11", &["a", "c", "d", "b"], |m: &M, v| {
            let (a, c, d, b) = (&v[0], &v[1], &v[2], &v[3]);
            Ok(m.p(a, &m.p(m.zero(), c, d)?, b)? == m.p(a, c, &m.p(a, d, b)?)?)
        }),
        Law::new("P12", &["a", "c", "d", "b"], |m: &M, v| {
            let (a, c, d, b) = (&v[0], &v[1], &v[2], &v[3]);
            Ok(m.p(a, &m.p(m.one(), c, d)?, b)? == m.p(b, c, &m.p(a, d, b)?)?)
        }),
        Law::new("P13", &["a", "c", "d", "b"], |m: &M, v| {
            let (a, c, d, b) = (&v[0], &v[1], &v[2], &v[3]);
            Ok(m.p(a, &m.p(c, d, m.zero())?, b)? == m.p(&m.p(a, c, b)?, d, a)?)
        }),
        Law::new("P14", &["a", "c", "d", "b"], |m: &M, v| {
            let (a, c, d, b) = (&v[0], &v[1], &v[2], &v[3]);
            Ok(m.p(a, &m.p(c, d, m.one())?, b)? == m.p(&m.p(a, c, b)?, d, b)?)
        }),
        Law::new("P21", &["a", "c", "b"], |m: &M, v| {
            let (a, c, b) = (&v[0], &v[1], &v[2]);
            Ok(m.p(a, &m.p(m.one(), c, m.zero())?, b)? == m.p(b, c, a)?)
        }),
        Law::new("P22", &["a", "b"], |m: &M, v| {
            Ok(m.p(&v[0], m.half(), &v[1])? == m.p(&v[1], m.half(), &v[0])?)
        }),
        Law::new("P23", &["c"], |m: &M, v| {
            Ok(m.p(m.one(), &m.p(m.one(), &v[0], m.zero())?, m.zero())? == v[0])
        }),
        Law::new("P41", &["a1", "b1", "a2", "b2", "c"], |m: &M, v| {
            let (a1, b1, a2, b2, c) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
            let h = m.half();
            let lhs = m.p(&m.p(a1, c, b1)?, h, &m.p(a2, c, b2)?)?;
            let rhs = m.p(&m.p(a2, c, b1)?, h, &m.p(a1, c, b2)?)?;
            Ok(lhs == rhs)
        }),
        Law::new("P42", &["a", "c", "b"], |m: &M, v| {
            let (a, c, b) = (&v[0], &v[1], &v[2]);
            let h = m.half();
            Ok(m.p(&m.p(a, c, b)?, h, &m.p(b, c, a)?)? == m.p(a, h, b)?)
        }),
        Law::new("P43", &["a", "c", "b", "d"], |m: &M, v| {
            let (a, c, b, d) = (&v[0], &v[1], &v[2], &v[3]);
            let h = m.half();
            let lhs = m.p(&m.p(a, &m.p(m.one(), c, m.zero())?, b)?, h, &m.p(a, c, d)?)?;
            Ok(lhs == m.p(a, h, &m.p(b, c, d)?)?)
        }),
        Law::new("bar-involution", &["a"], |m: &M, v| Ok(m.bar(&m.bar(&v[0])?)? == v[0])),
        Law::new("bar-one", &[], |m: &M, _| Ok(m.bar(m.one())? == *m.zero())),
        Law::new("swap-ends", &["b", "c", "a"], |m: &M, v| {
            let (b, c, a) = (&v[0], &v[1], &v[2]);
            Ok(m.p(b, c, a)? == m.p(a, &m.bar(c)?, b)?)
        }),
        Law::new("bar-p", &["a", "c", "b"], |m: &M, v| {
            let (a, c, b) = (&v[0], &v[1], &v[2]);
            Ok(m.bar(&m.p(a, c, b)?)? == m.p(&m.bar(a)?, c, &m.bar(b)?)?)
        }),
        Law::new("bar-dot", &["a", "b"], |m: &M, v| {
            let (a, b) = (&v[0], &v[1]);
            Ok(m.bar(&m.dot(a, b)?)? == m.circ(&m.bar(b)?, &m.bar(a)?)?)
        }),
        Law::new("bar-circ", &["a", "b"], |m: &M, v| {
            let (a, b) = (&v[0], &v[1]);
            Ok(m.bar(&m.circ(a, b)?)? == m.dot(&m.bar(b)?, &m.bar(a)?)?)
        }),
        Law::new("circ-dot-oplus", &["a", "b"], |m: &M, v| {
            let (a, b) = (&v[0], &v[1]);
            Ok(m.oplus(&m.circ(a, b)?, &m.dot(b, a)?)? == m.oplus(b, a)?)
        }),
        Law::new("half-is-bar-one-oplus-one", &[], |m: &M, _| {
            Ok(m.oplus(&m.bar(m.one())?, m.one())? == *m.half())
        }),
        Law::new("half-dot-p", &["a", "b", "c"], |m: &M, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let lhs = m.dot(m.half(), &m.p(a, b, c)?)?;
            let rhs = m.oplus(&m.dot(&m.bar(b)?, a)?, &m.dot(b, c)?)?;
            Ok(lhs == rhs)
        }),
    ]
}

type B = dyn ImmOps;

fn idempotent(b: &B, v: &[Value]) -> Outcome {
    Ok(b.oplus(&v[0], &v[0])? == v[0])
}

fn commutative(b: &B, v: &[Value]) -> Outcome {
    Ok(b.oplus(&v[0], &v[1])? == b.oplus(&v[1], &v[0])?)
}

fn medial(b: &B, v: &[Value]) -> Outcome {
    let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
    Ok(b.oplus(&b.oplus(x, y)?, &b.oplus(z, w)?)? == b.oplus(&b.oplus(x, z)?, &b.oplus(y, w)?)?)
}

fn associative(b: &B, v: &[Value]) -> Outcome {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    Ok(b.dot(x, &b.dot(y, z)?)? == b.dot(&b.dot(x, y)?, z)?)
}

fn unital(b: &B, v: &[Value]) -> Outcome {
    let one = b.unit();
    Ok(b.dot(&v[0], &one)? == v[0] && b.dot(&one, &v[0])? == v[0])
}

fn distributive(b: &B, v: &[Value]) -> Outcome {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let left = b.dot(x, &b.oplus(y, z)?)? == b.oplus(&b.dot(x, y)?, &b.dot(x, z)?)?;
    let right = b.dot(&b.oplus(x, y)?, z)? == b.oplus(&b.dot(x, z)?, &b.dot(y, z)?)?;
    Ok(left && right)
}

fn involution(b: &B, v: &[Value]) -> Outcome {
    Ok(b.inv(&b.inv(&v[0])?)? == v[0])
}

fn complement_oplus(b: &B, v: &[Value]) -> Outcome {
    let (x, y) = (&v[0], &v[1]);
    Ok(b.inv(&b.oplus(x, y)?)? == b.oplus(&b.inv(x)?, &b.inv(y)?)?)
}

fn absorbing(b: &B, v: &[Value]) -> Outcome {
    let zero = b.zero()?;
    Ok(b.dot(&v[0], &zero)? == zero && b.dot(&zero, &v[0])? == zero)
}

fn muu(b: &B, v: &[Value]) -> Outcome {
    Ok(b.oplus(&b.inv(&v[0])?, &v[0])? == b.half()?)
}

fn cancellative(b: &B, v: &[Value]) -> Outcome {
    let (a, a2, c) = (&v[0], &v[1], &v[2]);
    Ok(a == a2 || b.oplus(a, c)? != b.oplus(a2, c)?)
}

pub fn imm_axioms() -> Vec<Law<B>> {
    vec![
        Law::new("B1", &["a"], idempotent),
        Law::new("B2", &["a", "b"], commutative),
        Law::new("B3", &["a", "b", "c", "d"], medial),
        Law::new("B4", &["a", "b", "c"], associative),
        Law::new("B5", &["a"], unital),
        Law::new("B6", &["a", "b", "c"], distributive),
        Law::new("B7", &["a"], involution),
        Law::new("B8", &["a", "b"], complement_oplus),
        Law::new("B9", &["a"], absorbing),
        Law::new("B10", &["a"], muu),
    ]
}

pub fn imm_star_axioms() -> Vec<Law<B>> {
    vec![
        Law::new("C1", &["a"], idempotent),
        Law::new("C2", &["a", "b"], commutative),
        Law::new("C3", &["a", "a'", "b"], cancellative),
        Law::new("C4", &["a", "b", "c", "d"], medial),
        Law::new("C5", &["a", "b", "c"], associative),
        Law::new("C6", &["a"], unital),
        Law::new("C7", &["a", "b", "c"], distributive),
        Law::new("C8", &["a"], absorbing),
        Law::new("C9", &["a"], muu),
    ]
}

pub fn imm_properties() -> Vec<Law<B>> {
    vec![
        Law::new("IMMP1", &["a", "b", "c"], |b: &B, v| {
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            Ok(b.oplus(x, &b.oplus(y, z)?)? == b.oplus(&b.oplus(x, y)?, &b.oplus(x, z)?)?)
        }),
        Law::new("IMMP2", &[], |b: &B, _| {
            let h = b.half()?;
            Ok(b.inv(&h)? == h)
        }),
        Law::new("IMMP3", &["a"], |b: &B, v| Ok(b.inv(&v[0])? != v[0] || v[0] == b.half()?)),
        Law::new("IMMP4", &["a"], |b: &B, v| {
            Ok(b.dot(&b.half()?, &v[0])? == b.oplus(&b.zero()?, &v[0])?)
        }),
        Law::new("IMMP5", &["a"], |b: &B, v| {
            let h = b.half()?;
            Ok(b.dot(&h, &v[0])? == b.dot(&v[0], &h)?)
        }),
    ]
}

pub fn imm_star_properties() -> Vec<Law<B>> {
    vec![
        Law::new("IMMP*1", &["a"], involution),
        Law::new("IMMP*2", &["a", "b"], complement_oplus),
        Law::new("IMMP*3", &["b", "a"], |b: &B, v| {
            Ok(b.oplus(&v[0], &v[1])? != b.half()? || v[0] == b.inv(&v[1])?)
        }),
        Law::new("IMMP*4", &["x", "a", "b", "c"], |b: &B, v| {
            let (x, a, y, c) = (&v[0], &v[1], &v[2], &v[3]);
            let zero = b.zero()?;
            let ybar = b.inv(y)?;
            let premise = b.oplus(&zero, x)? == b.oplus(&b.dot(&ybar, a)?, &b.dot(y, c)?)?;
            if !premise {
                return Ok(true);
            }
            let lhs = b.oplus(&zero, &b.inv(x)?)?;
            let rhs = b.oplus(&b.dot(&ybar, &b.inv(a)?)?, &b.dot(y, &b.inv(c)?)?)?;
            Ok(lhs == rhs)
        }),
    ]
}

type R = RingStructure;

pub fn ring_axioms() -> Vec<Law<R>> {
    vec![
        Law::new("R1", &["a", "b", "c"], |r: &R, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            Ok(r.add(&r.add(a, b)?, c)? == r.add(a, &r.add(b, c)?)?)
        }),
        Law::new("R2", &["a", "b"], |r: &R, v| Ok(r.add(&v[0], &v[1])? == r.add(&v[1], &v[0])?)),
        Law::new("R3", &["a"], |r: &R, v| Ok(r.add(&v[0], r.zero())? == v[0])),
        Law::new("R4", &["a"], |r: &R, v| Ok(r.add(&r.neg(&v[0])?, &v[0])? == *r.zero())),
        Law::new("R5", &["a", "b", "c"], |r: &R, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            Ok(r.mul(a, &r.mul(b, c)?)? == r.mul(&r.mul(a, b)?, c)?)
        }),
        Law::new("R6", &["a"], |r: &R, v| {
            Ok(r.mul(&v[0], r.one())? == v[0] && r.mul(r.one(), &v[0])? == v[0])
        }),
        Law::new("R7", &["a", "b", "c"], |r: &R, v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            let left = r.mul(a, &r.add(b, c)?)? == r.add(&r.mul(a, b)?, &r.mul(a, c)?)?;
            let right = r.mul(&r.add(a, b)?, c)? == r.add(&r.mul(a, c)?, &r.mul(b, c)?)?;
            Ok(left && right)
        }),
        Law::new("zero-absorbs", &["a"], |r: &R, v| {
            let z = r.zero();
            Ok(r.mul(&v[0], z)? == *z && r.mul(z, &v[0])? == *z)
        }),
        Law::new("add-cancel", &["a", "a'", "b"], |r: &R, v| {
            let (a, a2, b) = (&v[0], &v[1], &v[2]);
            Ok(a == a2 || r.add(a, b)? != r.add(a2, b)?)
        }),
    ]
}
