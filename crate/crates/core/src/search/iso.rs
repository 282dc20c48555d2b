//! Canonical forms, isomorphism search and certification of candidate maps.

use num::{One, Zero};
use serde::Serialize;

use super::SearchError;
use crate::axioms::{Sampler, Status};
use crate::model::{Carrier, Kind, SampleSpec, Structure, Value, Q};

/// Largest order for which canonical forms are computed.
pub const CANONICAL_CAP: usize = 9;

/// Lexicographically least serialization over all relabelings that fix the
/// constants in role order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u32>);

fn kind_code(k: Kind) -> u32 {
    match k {
        Kind::Mobi => 0,
        Kind::Imm | Kind::ImmStar => 1,
        Kind::Ring => 2,
    }
}

struct Tables {
    n: usize,
    constants: Vec<usize>,
    tables: Vec<(usize, Vec<u32>)>,
}

fn tables(s: &Structure, what: &'static str) -> Result<Tables, SearchError> {
    let carrier = s.carrier();
    let n = carrier.size().ok_or(SearchError::InfiniteCarrier(what))?;
    let mut tables = Vec::new();
    for (name, op) in s.ops() {
        let t = op.materialize(name, carrier)?;
        let t = t.table().expect("materialized on a finite carrier");
        tables.push((t.arity(), t.cells().to_vec()));
    }
    let constants = s
        .constants()
        .into_iter()
        .map(|(_, v)| v.label().expect("finite constants are labels"))
        .collect();
    Ok(Tables { n, constants, tables })
}

/// Serializes the structure under the relabeling `sigma` (old → new),
/// aborting as soon as the output exceeds `best`.
fn relabeled(t: &Tables, kind: u32, sigma: &[usize], inv: &[usize], best: Option<&[u32]>) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(2 + t.constants.len() + t.tables.iter().map(|x| x.1.len()).sum::<usize>());
    let mut tight = best.is_some();
    let mut push = |out: &mut Vec<u32>, v: u32| -> bool {
        if tight {
            let b = best.expect("tight implies best")[out.len()];
            if v > b {
                return false;
            }
            if v < b {
                tight = false;
            }
        }
        out.push(v);
        true
    };
    let n = t.n;
    let header = [kind, n as u32];
    for v in header.into_iter().chain(t.constants.iter().map(|&c| sigma[c] as u32)) {
        if !push(&mut out, v) {
            return None;
        }
    }
    for (arity, cells) in &t.tables {
        let total = n.pow(*arity as u32);
        for new_idx in 0..total {
            let mut rest = new_idx;
            let mut old_idx = 0;
            let mut scale = 1;
            for _ in 0..*arity {
                old_idx += inv[rest % n] * scale;
                rest /= n;
                scale *= n;
            }
            if !push(&mut out, sigma[cells[old_idx] as usize] as u32) {
                return None;
            }
        }
    }
    if tight {
        // equal to best
        return None;
    }
    Some(out)
}

pub fn canonical_form(s: &Structure) -> Result<CanonicalForm, SearchError> {
    let t = tables(s, "canonical_form")?;
    let n = t.n;
    if n > CANONICAL_CAP {
        return Err(SearchError::TooLarge { what: "canonical forms", n, cap: CANONICAL_CAP });
    }
    let kind = kind_code(s.kind());
    let mut fixed: Vec<usize> = Vec::new();
    for &c in &t.constants {
        if !fixed.contains(&c) {
            fixed.push(c);
        }
    }
    let mut rest: Vec<usize> = (0..n).filter(|x| !fixed.contains(x)).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut sigma = vec![0usize; n];
    let mut inv = vec![0usize; n];
    let mut consider = |rest: &[usize], best: &mut Option<Vec<u32>>| {
        for (new, &old) in fixed.iter().chain(rest.iter()).enumerate() {
            sigma[old] = new;
            inv[new] = old;
        }
        if let Some(out) = relabeled(&t, kind, &sigma, &inv, best.as_deref()) {
            *best = Some(out);
        }
    };
    // Heap's algorithm over the non-constant elements.
    let k = rest.len();
    let mut counters = vec![0usize; k];
    consider(&rest, &mut best);
    let mut i = 0;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                rest.swap(0, i);
            } else {
                rest.swap(counters[i], i);
            }
            consider(&rest, &mut best);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm(best.expect("at least the identity relabeling")))
}

/// An explicit bijection between finite carriers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bijection {
    pub from: String,
    pub to: String,
    pub map: Vec<(String, String)>,
    #[serde(skip)]
    pub indices: Vec<usize>,
}

fn compatible(left: &Structure, right: &Structure) -> Result<(), SearchError> {
    let code = |s: &Structure| kind_code(s.kind());
    if code(left) != code(right) {
        return Err(SearchError::KindMismatch(left.kind().name().into(), right.kind().name().into()));
    }
    Ok(())
}

/// Re-checks that `map` (indices, left → right) is a bijection preserving
/// constants and every operation.
pub fn verify_bijection(left: &Structure, right: &Structure, map: &[usize]) -> Result<bool, SearchError> {
    compatible(left, right)?;
    let l = tables(left, "verify_bijection")?;
    let r = tables(right, "verify_bijection")?;
    if l.n != r.n || map.len() != l.n {
        return Ok(false);
    }
    let mut seen = vec![false; r.n];
    for &y in map {
        if y >= r.n || std::mem::replace(&mut seen[y], true) {
            return Ok(false);
        }
    }
    if l.constants.iter().zip(&r.constants).any(|(&a, &b)| map[a] != b) {
        return Ok(false);
    }
    let n = l.n;
    for ((arity, lt), (_, rt)) in l.tables.iter().zip(&r.tables) {
        for idx in 0..n.pow(*arity as u32) {
            let mut rest = idx;
            let mut image = 0;
            let mut scale = 1;
            for _ in 0..*arity {
                image += map[rest % n] * scale;
                rest /= n;
                scale *= n;
            }
            if map[lt[idx] as usize] != rt[image] as usize {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct IsoSearch<'a> {
    l: &'a Tables,
    r: &'a Tables,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn assign(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        match self.map[x] {
            Some(z) => z == y,
            None if self.used[y] => false,
            None => {
                self.map[x] = Some(y);
                self.used[y] = true;
                trail.push(x);
                true
            }
        }
    }

    /// Forces images of operation results over mapped arguments.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        let n = self.l.n;
        loop {
            let before = trail.len();
            let mapped: Vec<usize> = (0..n).filter(|&x| self.map[x].is_some()).collect();
            for ((arity, lt), (_, rt)) in self.l.tables.iter().zip(&self.r.tables) {
                let m = mapped.len();
                for idx in 0..m.pow(*arity as u32) {
                    let mut rest = idx;
                    let (mut li, mut ri, mut scale) = (0, 0, 1);
                    for _ in 0..*arity {
                        let x = mapped[rest % m];
                        li += x * scale;
                        ri += self.map[x].expect("mapped") * scale;
                        rest /= m;
                        scale *= n;
                    }
                    if !self.assign(lt[li] as usize, rt[ri] as usize, trail) {
                        return false;
                    }
                }
            }
            if trail.len() == before {
                return true;
            }
        }
    }

    fn undo(&mut self, trail: &mut Vec<usize>, mark: usize) {
        while trail.len() > mark {
            let x = trail.pop().expect("above mark");
            let y = self.map[x].take().expect("assigned");
            self.used[y] = false;
        }
    }

    fn search(&mut self, trail: &mut Vec<usize>) -> bool {
        let n = self.l.n;
        let Some(x) = (0..n).find(|&x| self.map[x].is_none()) else { return true };
        for y in 0..n {
            if self.used[y] {
                continue;
            }
            let mark = trail.len();
            if self.assign(x, y, trail) && self.propagate(trail) && self.search(trail) {
                return true;
            }
            self.undo(trail, mark);
        }
        false
    }
}

/// An isomorphism between two finite structures of the same kind, if any.
pub fn find_isomorphism(left: &Structure, right: &Structure) -> Result<Option<Bijection>, SearchError> {
    compatible(left, right)?;
    let l = tables(left, "find_isomorphism")?;
    let r = tables(right, "find_isomorphism")?;
    if l.n != r.n || l.tables.len() != r.tables.len() {
        return Ok(None);
    }
    let mut search = IsoSearch { l: &l, r: &r, map: vec![None; l.n], used: vec![false; r.n] };
    let mut trail = Vec::new();
    for (&a, &b) in l.constants.iter().zip(&r.constants) {
        if !search.assign(a, b, &mut trail) {
            return Ok(None);
        }
    }
    if !(search.propagate(&mut trail) && search.search(&mut trail)) {
        return Ok(None);
    }
    let indices: Vec<usize> = search.map.iter().map(|y| y.expect("complete")).collect();
    debug_assert!(verify_bijection(left, right, &indices)?);
    let (ll, rl) = (left.carrier().labels().expect("finite"), right.carrier().labels().expect("finite"));
    Ok(Some(Bijection {
        from: left.name().to_string(),
        to: right.name().to_string(),
        map: indices.iter().enumerate().map(|(x, &y)| (ll[x].clone(), rl[y].clone())).collect(),
        indices,
    }))
}

/// `x ↦ (a·x + b)/(c·x + d)` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
}

impl MobiusMap {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        MobiusMap { a, b, c, d }
    }

    pub fn is_invertible(&self) -> bool {
        !(&self.a * &self.d - &self.b * &self.c).is_zero()
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn apply(&self, v: &Value) -> Option<Value> {
        let (num, den) = match v {
            Value::Rat(x) => (&self.a * x + &self.b, &self.c * x + &self.d),
            Value::Infinity => (self.a.clone(), self.c.clone()),
            _ => return None,
        };
        Some(if den.is_zero() { Value::Infinity } else { Value::Rat(num / den) })
    }

    pub fn describe(&self) -> String {
        let f = crate::model::format_rational;
        format!("x -> ({}*x + {})/({}*x + {})", f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn identity() -> MobiusMap {
        MobiusMap::new(Q::one(), Q::zero(), Q::zero(), Q::one())
    }
}

/// Outcome of certifying a candidate isomorphism on samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub map: String,
    pub status: Status,
    pub checked: u64,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Certifies that `phi` is an isomorphism `left → right` on samples:
/// constants correspond, `phi` and its inverse map sampled points into the
/// other carrier, and every operation commutes with `phi`.
pub fn certify_map(
    left: &Structure,
    right: &Structure,
    phi: &MobiusMap,
    sample: &SampleSpec,
) -> Result<Certificate, SearchError> {
    compatible(left, right)?;
    let mut cert = Certificate {
        map: phi.describe(),
        status: Status::Pass,
        checked: 0,
        witness: Vec::new(),
        note: None,
    };
    let fail = |cert: &mut Certificate, carrier: &Carrier, args: &[Value], note: String| {
        cert.status = Status::Fail;
        cert.witness = args.iter().map(|v| carrier.render(v)).collect();
        cert.note = Some(note);
    };
    if !phi.is_invertible() {
        fail(&mut cert, left.carrier(), &[], "map is not invertible".into());
        return Ok(cert);
    }
    let (lc, rc) = (left.carrier(), right.carrier());
    for ((role, a), (_, b)) in left.constants().into_iter().zip(right.constants()) {
        cert.checked += 1;
        if phi.apply(a).as_ref() != Some(b) {
            fail(&mut cert, lc, std::slice::from_ref(a), format!("constant {role} is not preserved"));
            return Ok(cert);
        }
    }
    let sampler_for = |s: &Structure| -> Result<Sampler, SearchError> {
        let domain = s.carrier().domain().ok_or(SearchError::InfiniteCarrier("certify_map"))?;
        let specials = s.constants().into_iter().map(|(_, v)| v.clone()).collect();
        Ok(Sampler::new(domain.clone(), sample.clone(), specials))
    };
    let (ls, rs) = (sampler_for(left)?, sampler_for(right)?);
    let inverse = phi.inverse();
    for (x, y) in ls.tuples(0, 1).zip(rs.tuples(0, 1)) {
        cert.checked += 1;
        if !phi.apply(&x[0]).is_some_and(|v| rc.contains(&v)) {
            fail(&mut cert, lc, &x, "image outside the target carrier".into());
            return Ok(cert);
        }
        if !inverse.apply(&y[0]).is_some_and(|v| lc.contains(&v)) {
            fail(&mut cert, rc, &y, "preimage outside the source carrier".into());
            return Ok(cert);
        }
    }
    for (stream, ((name, lop), (_, rop))) in left.ops().into_iter().zip(right.ops()).enumerate() {
        for args in ls.tuples(1 + stream as u64, lop.arity()) {
            cert.checked += 1;
            let image: Option<Vec<Value>> = args.iter().map(|v| phi.apply(v)).collect();
            let lhs = lop.apply(name, lc, &args).ok().and_then(|v| phi.apply(&v));
            let rhs = image.and_then(|img| rop.apply(name, rc, &img).ok());
            if lhs.is_none() || lhs != rhs {
                fail(&mut cert, lc, &args, format!("{name} does not commute with the map"));
                return Ok(cert);
            }
        }
    }
    Ok(cert)
}
