use super::carrier::Carrier;
use super::op::OpImpl;
use super::value::Value;
use super::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Mobi,
    Imm,
    ImmStar,
    Ring,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Mobi => "mobi",
            Kind::Imm => "imm",
            Kind::ImmStar => "imm_star",
            Kind::Ring => "ring",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        match name {
            "mobi" => Some(Kind::Mobi),
            "imm" => Some(Kind::Imm),
            "imm_star" => Some(Kind::ImmStar),
            "ring" => Some(Kind::Ring),
            _ => None,
        }
    }
}

fn check_constant(carrier: &Carrier, role: &str, v: &Value) -> Result<(), ModelError> {
    if carrier.contains(v) {
        Ok(())
    } else {
        Err(ModelError::ConstantNotInCarrier { role: role.to_string(), value: v.to_string() })
    }
}

fn check_op(carrier: &Carrier, name: &str, op: &OpImpl, arity: usize) -> Result<(), ModelError> {
    if op.arity() != arity {
        return Err(ModelError::Arity { op: name.to_string(), expected: arity, got: op.arity() });
    }
    match (op, carrier.size()) {
        (OpImpl::Table(t), Some(n)) if t.size() != n => Err(ModelError::Shape(format!(
            "table {name} is over {} elements but the carrier has {n}",
            t.size()
        ))),
        (OpImpl::Table(_), None) => Err(ModelError::Shape(format!(
            "table {name} cannot back an operation on a rational domain"
        ))),
        _ => Ok(()),
    }
}

fn check_carrier(carrier: &Carrier) -> Result<(), ModelError> {
    if let Carrier::Finite(labels) = carrier {
        if labels.is_empty() {
            return Err(ModelError::Schema("finite carrier must not be empty".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
    }
    Ok(())
}

/// `(A, p, 0, ½, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiStructure {
    name: String,
    carrier: Carrier,
    p: OpImpl,
    zero: Value,
    half: Value,
    one: Value,
}

impl MobiStructure {
    pub fn new(
        name: impl Into<String>,
        carrier: Carrier,
        p: OpImpl,
        zero: Value,
        half: Value,
        one: Value,
    ) -> Result<Self, ModelError> {
        check_carrier(&carrier)?;
        check_op(&carrier, "p", &p, 3)?;
        check_constant(&carrier, "zero", &zero)?;
        check_constant(&carrier, "half", &half)?;
        check_constant(&carrier, "one", &one)?;
        Ok(MobiStructure { name: name.into(), carrier, p, zero, half, one })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn p_op(&self) -> &OpImpl {
        &self.p
    }

    pub fn zero(&self) -> &Value {
        &self.zero
    }

    pub fn half(&self) -> &Value {
        &self.half
    }

    pub fn one(&self) -> &Value {
        &self.one
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn p(&self, a: &Value, b: &Value, c: &Value) -> Result<Value, ModelError> {
        self.p.apply("p", &self.carrier, &[a.clone(), b.clone(), c.clone()])
    }

    /// `ā = p(1, a, 0)`
    pub fn bar(&self, a: &Value) -> Result<Value, ModelError> {
        self.p(&self.one, a, &self.zero)
    }

    /// `a·b = p(0, a, b)`
    pub fn dot(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.p(&self.zero, a, b)
    }

    /// `a⊕b = p(a, ½, b)`
    pub fn oplus(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.p(a, &self.half, b)
    }

    /// `a∘b = p(a, b, 1)`
    pub fn circ(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.p(a, b, &self.one)
    }
}

/// `(B, ā, ⊕, ·, 1)`; also used for IMM* algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImmStructure {
    name: String,
    carrier: Carrier,
    inv: OpImpl,
    oplus: OpImpl,
    dot: OpImpl,
    one: Value,
}

impl ImmStructure {
    pub fn new(
        name: impl Into<String>,
        carrier: Carrier,
        inv: OpImpl,
        oplus: OpImpl,
        dot: OpImpl,
        one: Value,
    ) -> Result<Self, ModelError> {
        check_carrier(&carrier)?;
        check_op(&carrier, "inv", &inv, 1)?;
        check_op(&carrier, "oplus", &oplus, 2)?;
        check_op(&carrier, "dot", &dot, 2)?;
        check_constant(&carrier, "one", &one)?;
        Ok(ImmStructure { name: name.into(), carrier, inv, oplus, dot, one })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn inv_op(&self) -> &OpImpl {
        &self.inv
    }

    pub fn oplus_op(&self) -> &OpImpl {
        &self.oplus
    }

    pub fn dot_op(&self) -> &OpImpl {
        &self.dot
    }

    pub fn one(&self) -> &Value {
        &self.one
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn inv(&self, a: &Value) -> Result<Value, ModelError> {
        self.inv.apply("inv", &self.carrier, std::slice::from_ref(a))
    }

    pub fn oplus(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.oplus.apply("oplus", &self.carrier, &[a.clone(), b.clone()])
    }

    pub fn dot(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.dot.apply("dot", &self.carrier, &[a.clone(), b.clone()])
    }

    /// `1̄`
    pub fn zero(&self) -> Result<Value, ModelError> {
        self.inv(&self.one)
    }

    /// `1̄ ⊕ 1`
    pub fn half(&self) -> Result<Value, ModelError> {
        self.oplus(&self.zero()?, &self.one)
    }
}

/// `(R, +, ·, −, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingStructure {
    name: String,
    carrier: Carrier,
    add: OpImpl,
    mul: OpImpl,
    neg: OpImpl,
    zero: Value,
    one: Value,
}

impl RingStructure {
    pub fn new(
        name: impl Into<String>,
        carrier: Carrier,
        add: OpImpl,
        mul: OpImpl,
        neg: OpImpl,
        zero: Value,
        one: Value,
    ) -> Result<Self, ModelError> {
        check_carrier(&carrier)?;
        check_op(&carrier, "add", &add, 2)?;
        check_op(&carrier, "mul", &mul, 2)?;
        check_op(&carrier, "neg", &neg, 1)?;
        check_constant(&carrier, "zero", &zero)?;
        check_constant(&carrier, "one", &one)?;
        if zero == one && carrier.size() != Some(1) {
            return Err(ModelError::Schema(
                "zero and one coincide on a carrier with more than one element".into(),
            ));
        }
        Ok(RingStructure { name: name.into(), carrier, add, mul, neg, zero, one })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn add_op(&self) -> &OpImpl {
        &self.add
    }

    pub fn mul_op(&self) -> &OpImpl {
        &self.mul
    }

    pub fn neg_op(&self) -> &OpImpl {
        &self.neg
    }

    pub fn zero(&self) -> &Value {
        &self.zero
    }

    pub fn one(&self) -> &Value {
        &self.one
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.add.apply("add", &self.carrier, &[a.clone(), b.clone()])
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.mul.apply("mul", &self.carrier, &[a.clone(), b.clone()])
    }

    pub fn neg(&self, a: &Value) -> Result<Value, ModelError> {
        self.neg.apply("neg", &self.carrier, std::slice::from_ref(a))
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Result<Value, ModelError> {
        self.add(a, &self.neg(b)?)
    }

    /// `1 + 1`
    pub fn two(&self) -> Result<Value, ModelError> {
        self.add(&self.one, &self.one)
    }
}

/// A tagged structure as read from or written to an interchange document.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    Mobi(MobiStructure),
    Imm(ImmStructure),
    ImmStar(ImmStructure),
    Ring(RingStructure),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Mobi(_) => Kind::Mobi,
            Structure::Imm(_) => Kind::Imm,
            Structure::ImmStar(_) => Kind::ImmStar,
            Structure::Ring(_) => Kind::Ring,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Structure::Mobi(m) => m.name(),
            Structure::Imm(b) | Structure::ImmStar(b) => b.name(),
            Structure::Ring(r) => r.name(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Structure::Mobi(m) => m.carrier(),
            Structure::Imm(b) | Structure::ImmStar(b) => b.carrier(),
            Structure::Ring(r) => r.carrier(),
        }
    }

    /// Operations in canonical order.
    pub fn ops(&self) -> Vec<(&'static str, &OpImpl)> {
        match self {
            Structure::Mobi(m) => vec![("p", m.p_op())],
            Structure::Imm(b) | Structure::ImmStar(b) => {
                vec![("inv", b.inv_op()), ("oplus", b.oplus_op()), ("dot", b.dot_op())]
            }
            Structure::Ring(r) => vec![("add", r.add_op()), ("mul", r.mul_op()), ("neg", r.neg_op())],
        }
    }

    /// Constants in canonical role order.
    pub fn constants(&self) -> Vec<(&'static str, &Value)> {
        match self {
            Structure::Mobi(m) => vec![("zero", m.zero()), ("half", m.half()), ("one", m.one())],
            Structure::Imm(b) | Structure::ImmStar(b) => vec![("one", b.one())],
            Structure::Ring(r) => vec![("zero", r.zero()), ("one", r.one())],
        }
    }

    pub fn op(&self, name: &str) -> Option<&OpImpl> {
        self.ops().into_iter().find(|(n, _)| *n == name).map(|(_, op)| op)
    }

    /// Evaluates a named operation with full membership checking.
    pub fn eval(&self, op_name: &str, args: &[Value]) -> Result<Value, ModelError> {
        let op = self.op(op_name).ok_or_else(|| ModelError::UnknownOp(op_name.to_string()))?;
        if args.len() != op.arity() {
            return Err(ModelError::Arity {
                op: op_name.to_string(),
                expected: op.arity(),
                got: args.len(),
            });
        }
        let carrier = self.carrier();
        if let Some(bad) = args.iter().find(|a| !carrier.contains(a)) {
            return Err(ModelError::NonMember(carrier.render(bad)));
        }
        op.apply(op_name, carrier, args)
    }

    pub fn as_mobi(&self) -> Option<&MobiStructure> {
        match self {
            Structure::Mobi(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_imm(&self) -> Option<&ImmStructure> {
        match self {
            Structure::Imm(b) | Structure::ImmStar(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_ring(&self) -> Option<&RingStructure> {
        match self {
            Structure::Ring(r) => Some(r),
            _ => None,
        }
    }
}

impl From<MobiStructure> for Structure {
    fn from(m: MobiStructure) -> Self {
        Structure::Mobi(m)
    }
}

impl From<RingStructure> for Structure {
    fn from(r: RingStructure) -> Self {
        Structure::Ring(r)
    }
}
