use std::sync::Arc;

use num::{One, Zero};

use super::carrier::Carrier;
use super::structure::Structure;
use super::value::{qi, Value, Q};
use super::ModelError;

/// Dense operation table over carrier positions, row-major in the arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    arity: usize,
    cells: Vec<u32>,
}

impl Table {
    pub fn new(n: usize, arity: usize, cells: Vec<u32>) -> Result<Table, ModelError> {
        let expected = n.pow(arity as u32);
        if cells.len() != expected {
            return Err(ModelError::Shape(format!(
                "table of arity {arity} over {n} elements needs {expected} cells, got {}",
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&c| c as usize >= n) {
            return Err(ModelError::Shape(format!("table entry {bad} is not a carrier position")));
        }
        Ok(Table { n, arity, cells })
    }

    pub fn from_fn(
        n: usize,
        arity: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Table {
        let mut cells = Vec::with_capacity(n.pow(arity as u32));
        let mut idx = vec![0usize; arity];
        for _ in 0..n.pow(arity as u32) {
            cells.push(f(&idx) as u32);
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        Table { n, arity, cells }
    }

    pub fn try_from_fn<E>(
        n: usize,
        arity: usize,
        mut f: impl FnMut(&[usize]) -> Result<usize, E>,
    ) -> Result<Table, E> {
        let mut err = None;
        let table = Table::from_fn(n, arity, |idx| {
            if err.is_some() {
                return 0;
            }
            match f(idx) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    0
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(table),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.n + a)
    }

    pub fn get(&self, args: &[usize]) -> usize {
        self.cells[self.index(args)] as usize
    }

    pub fn set(&mut self, args: &[usize], value: usize) {
        let i = self.index(args);
        self.cells[i] = value as u32;
    }

    pub fn set_cell(&mut self, cell: usize, value: usize) {
        self.cells[cell] = value as u32;
    }
}

/// What a composite formula computes from the operations of its source
/// structure. Finite conversions materialize these into tables; rational ones
/// keep them symbolic so the result stays exact on the whole domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    /// `ā = p(1, a, 0)`
    MobiInv,
    /// `a·b = p(0, a, b)`
    MobiDot,
    /// `a⊕b = p(a, ½, b)`
    MobiOplus,
    /// `a∘b = p(a, b, 1)`
    MobiCirc,
    /// `a+b = 2·p(a, ½, b)` with `2` the element parameter
    MobiRingAdd,
    /// `−a = p(0, p(1, 2, 0), a)`
    MobiRingNeg,
    /// complement of `b̄·ā`
    ImmCirc,
    ImmDot,
    /// `a+b = 2·(a⊕b)`
    ImmRingAdd,
    /// `−a = 2̄·a`
    ImmRingNeg,
    /// `p(a,b,c) = 2·((b̄·a)⊕(b·c))`
    ImmMobiP,
    /// `ā = 1 − a`
    RingInv,
    /// `a⊕b = ½·(a+b)` with `½ = (1+1)⁻¹` the element parameter
    RingOplus,
    RingMul,
    /// `p(a,b,c) = a + bc − ba`
    RingMobiP,
}

impl Recipe {
    pub const ALL: [Recipe; 15] = [
        Recipe::MobiInv,
        Recipe::MobiDot,
        Recipe::MobiOplus,
        Recipe::MobiCirc,
        Recipe::MobiRingAdd,
        Recipe::MobiRingNeg,
        Recipe::ImmCirc,
        Recipe::ImmDot,
        Recipe::ImmRingAdd,
        Recipe::ImmRingNeg,
        Recipe::ImmMobiP,
        Recipe::RingInv,
        Recipe::RingOplus,
        Recipe::RingMul,
        Recipe::RingMobiP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::MobiInv => "mobi-inv",
            Recipe::MobiDot => "mobi-dot",
            Recipe::MobiOplus => "mobi-oplus",
            Recipe::MobiCirc => "mobi-circ",
            Recipe::MobiRingAdd => "mobi-ring-add",
            Recipe::MobiRingNeg => "mobi-ring-neg",
            Recipe::ImmCirc => "imm-circ",
            Recipe::ImmDot => "imm-dot",
            Recipe::ImmRingAdd => "imm-ring-add",
            Recipe::ImmRingNeg => "imm-ring-neg",
            Recipe::ImmMobiP => "imm-mobi-p",
            Recipe::RingInv => "ring-inv",
            Recipe::RingOplus => "ring-oplus",
            Recipe::RingMul => "ring-mul",
            Recipe::RingMobiP => "ring-mobi-p",
        }
    }

    pub fn from_name(name: &str) -> Option<Recipe> {
        Recipe::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Recipe::MobiInv | Recipe::MobiRingNeg | Recipe::ImmRingNeg | Recipe::RingInv => 1,
            Recipe::ImmMobiP | Recipe::RingMobiP => 3,
            _ => 2,
        }
    }

    pub fn needs_element(self) -> bool {
        matches!(
            self,
            Recipe::MobiRingAdd
                | Recipe::MobiRingNeg
                | Recipe::ImmRingAdd
                | Recipe::ImmRingNeg
                | Recipe::ImmMobiP
                | Recipe::RingOplus
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derived {
    pub recipe: Recipe,
    pub source: Arc<Structure>,
    pub element: Option<Value>,
}

/// Registered exact formulas.
///
/// The ternary entries are the interval-style mobi operations; `Reciprocal`
/// lives on `[1, +∞]` and evaluates at the projective point through
/// `p(a,b,c) = 1 / ((1 − 1/b)/a + 1/(bc))` with `1/∞ = 0`, which gives
/// `p(∞,b,c) = bc`, `p(a,∞,c) = a` and `p(a,b,∞) = ab/(b − 1)` (∞ when `b = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `(1 − b)a + bc`
    Affine,
    /// `(a − ab + ac + 2bc + abc) / (1 + b + c + 2ab − bc)`
    Third,
    /// `(a − ab + (α−2)ac + (α−1)bc + (α−2)²abc) / (1 + (α−2)(b + c − bc) + (α−1)(α−2)ab)`
    Alpha(Q),
    /// `(a(1 − b) + c(1 + b)) / 2`
    Symmetric,
    /// `abc / (a − c + bc)` on `[1, +∞]`
    Reciprocal,
    /// Planar operation with parameter `K`, matrix-ring form `(1 − b)a + bc`.
    Planar(Q),
    FieldAdd,
    FieldMul,
    FieldNeg,
    Derived(Derived),
}

impl Formula {
    pub fn name(&self) -> &'static str {
        match self {
            Formula::Affine => "interval",
            Formula::Third => "interval-third",
            Formula::Alpha(_) => "interval-alpha",
            Formula::Symmetric => "symmetric-interval",
            Formula::Reciprocal => "reciprocal-interval",
            Formula::Planar(_) => "planar",
            Formula::FieldAdd => "field-add",
            Formula::FieldMul => "field-mul",
            Formula::FieldNeg => "field-neg",
            Formula::Derived(_) => "derived",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Formula::FieldAdd | Formula::FieldMul => 2,
            Formula::FieldNeg => 1,
            Formula::Derived(d) => d.recipe.arity(),
            _ => 3,
        }
    }

    pub fn derived(recipe: Recipe, source: Arc<Structure>, element: Option<Value>) -> Formula {
        Formula::Derived(Derived { recipe, source, element })
    }

    pub fn eval(&self, args: &[Value]) -> Result<Value, ModelError> {
        if args.len() != self.arity() {
            return Err(ModelError::Arity {
                op: self.name().to_string(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        match self {
            Formula::Derived(d) => eval_derived(d, args),
            Formula::Planar(k) => {
                let [a, b, c] = pairs3(args)?;
                planar(k, a, b, c)
            }
            Formula::Reciprocal => reciprocal(&args[0], &args[1], &args[2]),
            Formula::FieldAdd => Ok(Value::Rat(scalar(&args[0])? + scalar(&args[1])?)),
            Formula::FieldMul => Ok(Value::Rat(scalar(&args[0])? * scalar(&args[1])?)),
            Formula::FieldNeg => Ok(Value::Rat(-scalar(&args[0])?.clone())),
            Formula::Affine => {
                let (a, b, c) = scalars3(args)?;
                Ok(Value::Rat(a + b * (c - a)))
            }
            Formula::Third => {
                let (a, b, c) = scalars3(args)?;
                let num = a - a * b + a * c + qi(2) * b * c + a * b * c;
                let den = qi(1) + b + c + qi(2) * a * b - b * c;
                divide(num, den, "interval-third")
            }
            Formula::Alpha(alpha) => {
                let (a, b, c) = scalars3(args)?;
                let s = alpha - qi(2);
                let t = alpha - qi(1);
                let num = a - a * b + &s * a * c + &t * b * c + &s * &s * a * b * c;
                let den = qi(1) + &s * (b + c - b * c) + &t * &s * a * b;
                divide(num, den, "interval-alpha")
            }
            Formula::Symmetric => {
                let (a, b, c) = scalars3(args)?;
                Ok(Value::Rat((a * (qi(1) - b) + c * (qi(1) + b)) / qi(2)))
            }
        }
    }
}

fn divide(num: Q, den: Q, op: &str) -> Result<Value, ModelError> {
    if den.is_zero() {
        return Err(ModelError::DivisionByZero(op.to_string()));
    }
    Ok(Value::Rat(num / den))
}

fn scalar(v: &Value) -> Result<&Q, ModelError> {
    v.as_rat()
        .ok_or_else(|| ModelError::Type(format!("expected a rational scalar, got {v}")))
}

fn scalars3(args: &[Value]) -> Result<(&Q, &Q, &Q), ModelError> {
    Ok((scalar(&args[0])?, scalar(&args[1])?, scalar(&args[2])?))
}

fn pairs3(args: &[Value]) -> Result<[(&Q, &Q); 3], ModelError> {
    fn pair(v: &Value) -> Result<(&Q, &Q), ModelError> {
        match v {
            Value::Pair(x, y) => Ok((x, y)),
            other => Err(ModelError::Type(format!("expected a rational pair, got {other}"))),
        }
    }
    let a = pair(&args[0])?;
    let b = pair(&args[1])?;
    let c = pair(&args[2])?;
    Ok([a, b, c])
}

fn planar(k: &Q, a: (&Q, &Q), b: (&Q, &Q), c: (&Q, &Q)) -> Result<Value, ModelError> {
    let (a1, a2) = a;
    let (b1, b2) = b;
    let (c1, c2) = c;
    let keep = qi(1) - b1;
    let x = &keep * a1 + b1 * c1 + k * b2 * (c2 - a2);
    let y = &keep * a2 + b1 * c2 + b2 * (c1 - a1);
    Ok(Value::Pair(x, y))
}

fn reciprocal(a: &Value, b: &Value, c: &Value) -> Result<Value, ModelError> {
    let finite = |v: &Value| -> Result<Option<Q>, ModelError> {
        match v {
            Value::Infinity => Ok(None),
            Value::Rat(r) => Ok(Some(r.clone())),
            other => Err(ModelError::Type(format!("expected a projective scalar, got {other}"))),
        }
    };
    match (finite(a)?, finite(b)?, finite(c)?) {
        (Some(a), Some(b), Some(c)) => {
            let num = &a * &b * &c;
            let den = &a - &c + &b * &c;
            divide(num, den, "reciprocal-interval")
        }
        (a, b, c) => {
            // 1/p = (1 − 1/b)(1/a) + (1/b)(1/c), with 1/∞ = 0
            let inv = |v: Option<Q>| -> Result<Q, ModelError> {
                match v {
                    None => Ok(Q::zero()),
                    Some(v) if v.is_zero() => {
                        Err(ModelError::DivisionByZero("reciprocal-interval".into()))
                    }
                    Some(v) => Ok(v.recip()),
                }
            };
            let (x, y, z) = (inv(a)?, inv(b)?, inv(c)?);
            let t = (Q::one() - &y) * x + y * z;
            if t.is_zero() {
                Ok(Value::Infinity)
            } else {
                Ok(Value::Rat(t.recip()))
            }
        }
    }
}

fn element(d: &Derived) -> Result<&Value, ModelError> {
    d.element.as_ref().ok_or_else(|| {
        ModelError::Schema(format!("derived recipe {} needs an element parameter", d.recipe.name()))
    })
}

fn eval_derived(d: &Derived, args: &[Value]) -> Result<Value, ModelError> {
    use Recipe::*;
    let mismatch = || {
        ModelError::Schema(format!(
            "derived recipe {} cannot use a {} source",
            d.recipe.name(),
            d.source.kind().name()
        ))
    };
    match &*d.source {
        Structure::Mobi(m) => match d.recipe {
            MobiInv => m.p(m.one(), &args[0], m.zero()),
            MobiDot => m.p(m.zero(), &args[0], &args[1]),
            MobiOplus => m.p(&args[0], m.half(), &args[1]),
            MobiCirc => m.p(&args[0], &args[1], m.one()),
            MobiRingAdd => {
                let mid = m.p(&args[0], m.half(), &args[1])?;
                m.p(m.zero(), element(d)?, &mid)
            }
            MobiRingNeg => {
                let two_bar = m.p(m.one(), element(d)?, m.zero())?;
                m.p(m.zero(), &two_bar, &args[0])
            }
            _ => Err(mismatch()),
        },
        Structure::Imm(b) | Structure::ImmStar(b) => match d.recipe {
            ImmCirc => {
                let prod = b.dot(&b.inv(&args[1])?, &b.inv(&args[0])?)?;
                b.inv(&prod)
            }
            ImmDot => b.dot(&args[0], &args[1]),
            ImmRingAdd => b.dot(element(d)?, &b.oplus(&args[0], &args[1])?),
            ImmRingNeg => b.dot(&b.inv(element(d)?)?, &args[0]),
            ImmMobiP => {
                let (a, mid, c) = (&args[0], &args[1], &args[2]);
                let left = b.dot(&b.inv(mid)?, a)?;
                let right = b.dot(mid, c)?;
                b.dot(element(d)?, &b.oplus(&left, &right)?)
            }
            _ => Err(mismatch()),
        },
        Structure::Ring(r) => match d.recipe {
            RingInv => r.sub(r.one(), &args[0]),
            RingOplus => r.mul(element(d)?, &r.add(&args[0], &args[1])?),
            RingMul => r.mul(&args[0], &args[1]),
            RingMobiP => {
                let (a, mid, c) = (&args[0], &args[1], &args[2]);
                let bc = r.mul(mid, c)?;
                let ba = r.mul(mid, a)?;
                r.sub(&r.add(a, &bc)?, &ba)
            }
            _ => Err(mismatch()),
        },
    }
}

/// How an operation is backed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpImpl {
    Table(Table),
    Formula(Formula),
}

impl OpImpl {
    pub fn arity(&self) -> usize {
        match self {
            OpImpl::Table(t) => t.arity(),
            OpImpl::Formula(f) => f.arity(),
        }
    }

    pub fn table(&self) -> Option<&Table> {
        match self {
            OpImpl::Table(t) => Some(t),
            OpImpl::Formula(_) => None,
        }
    }

    /// Evaluates without checking argument membership; formula results are
    /// checked against the carrier so closure failures surface as errors.
    pub fn apply(&self, name: &str, carrier: &Carrier, args: &[Value]) -> Result<Value, ModelError> {
        match self {
            OpImpl::Table(t) => {
                if args.len() != t.arity() {
                    return Err(ModelError::Arity {
                        op: name.to_string(),
                        expected: t.arity(),
                        got: args.len(),
                    });
                }
                let mut idx = 0usize;
                for a in args {
                    match a {
                        Value::Label(i) if *i < t.size() => idx = idx * t.size() + i,
                        other => return Err(ModelError::NonMember(other.to_string())),
                    }
                }
                Ok(Value::Label(t.cells()[idx] as usize))
            }
            OpImpl::Formula(f) => {
                let v = f.eval(args)?;
                if carrier.contains(&v) {
                    Ok(v)
                } else {
                    Err(ModelError::Closure { op: name.to_string(), value: carrier.render(&v) })
                }
            }
        }
    }

    /// Replaces a formula by its table over a finite carrier.
    pub fn materialize(&self, name: &str, carrier: &Carrier) -> Result<OpImpl, ModelError> {
        match (self, carrier.size()) {
            (OpImpl::Formula(_), Some(n)) => {
                let arity = self.arity();
                let mut args = vec![Value::Label(0); arity];
                let table = Table::try_from_fn(n, arity, |idx| {
                    for (slot, &i) in args.iter_mut().zip(idx) {
                        *slot = Value::Label(i);
                    }
                    match self.apply(name, carrier, &args)? {
                        Value::Label(i) => Ok(i),
                        other => Err(ModelError::NonMember(other.to_string())),
                    }
                })?;
                Ok(OpImpl::Table(table))
            }
            _ => Ok(self.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::value::q;
    use num::Signed;

    fn r(n: i64, d: i64) -> Value {
        Value::ratio(n, d)
    }

    #[test]
    fn third_formula_at_one_third() {
        let v = Formula::Third.eval(&[r(1, 1), r(1, 3), r(0, 1)]).unwrap();
        assert_eq!(v, r(1, 3));
    }

    #[test]
    fn alpha_two_is_affine() {
        let f = Formula::Alpha(qi(2));
        let args = [r(1, 5), r(2, 7), r(3, 4)];
        assert_eq!(f.eval(&args).unwrap(), Formula::Affine.eval(&args).unwrap());
    }

    #[test]
    fn reciprocal_at_infinity() {
        let f = Formula::Reciprocal;
        assert_eq!(f.eval(&[Value::Infinity, r(3, 1), r(5, 2)]).unwrap(), r(15, 2));
        assert_eq!(f.eval(&[r(7, 3), Value::Infinity, r(5, 2)]).unwrap(), r(7, 3));
        assert_eq!(f.eval(&[r(3, 1), r(2, 1), Value::Infinity]).unwrap(), r(6, 1));
        assert_eq!(f.eval(&[r(3, 1), r(1, 1), Value::Infinity]).unwrap(), Value::Infinity);
        assert_eq!(
            f.eval(&[Value::Infinity, Value::Infinity, Value::Infinity]).unwrap(),
            Value::Infinity
        );
    }

    #[test]
    fn reciprocal_limit_matches_large_arguments() {
        // abc/(a − c + bc) approaches bc as a grows
        let big = Formula::Reciprocal.eval(&[r(1_000_000_000, 1), r(3, 1), r(2, 1)]).unwrap();
        let Value::Rat(x) = big else { panic!() };
        assert!((x - qi(6)).abs() < q(1, 1000));
    }

    #[test]
    fn planar_second_component_at_k_zero() {
        let a = Value::pair(q(1, 3), q(1, 5));
        let b = Value::pair(q(1, 2), q(2, 7));
        let c = Value::pair(q(3, 4), q(-1, 9));
        let Value::Pair(_, y) = Formula::Planar(qi(0)).eval(&[a, b, c]).unwrap() else {
            panic!()
        };
        // (1−b₁)a₂ + b₁c₂ + b₂(c₁ − a₁)
        let expect = q(1, 2) * q(1, 5) + q(1, 2) * q(-1, 9) + q(2, 7) * (q(3, 4) - q(1, 3));
        assert_eq!(y, expect);
    }

    #[test]
    fn table_from_fn_is_row_major() {
        let t = Table::from_fn(3, 2, |i| (i[0] + i[1]) % 3);
        assert_eq!(t.cells(), &[0, 1, 2, 1, 2, 0, 2, 0, 1]);
        assert_eq!(t.get(&[2, 2]), 1);
    }

    #[test]
    fn table_shape_is_validated() {
        assert!(Table::new(2, 2, vec![0, 1, 1]).is_err());
        assert!(Table::new(2, 1, vec![0, 2]).is_err());
    }
}
