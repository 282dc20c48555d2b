//! Finite unitary rings in which `1 + 1` is invertible.
//!
//! The additive group runs over invariant-factor decompositions
//! `ℤ/d₁ × … × ℤ/d_k` with `d₁ | … | d_k`; a multiplication is fixed by the
//! products of the standard generators, each constrained to the subgroup
//! killed by `gcd(d_i, d_j)`, and extended bilinearly.

use std::collections::BTreeMap;

use super::{canonical_form, SearchError};
use crate::model::{Carrier, OpImpl, RingStructure, Structure, Table, Value};

pub const RING_ASSIGNMENT_CAP: u64 = 50_000_000;

/// Invariant factor lists of the abelian groups of order `n`.
pub fn abelian_groups(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, divides: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        // build from the largest factor down: each next factor divides the previous one
        if n == 1 {
            let mut f = acc.clone();
            f.reverse();
            out.push(f);
            return;
        }
        for d in (2..=n.min(divides)).rev() {
            if n.is_multiple_of(d) && divides.is_multiple_of(d) {
                let rest = n / d;
                // remaining factors all divide d, so their product divides d^k
                acc.push(d);
                go(rest, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.retain(|f| f.windows(2).all(|w| w[1] % w[0] == 0));
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

struct Group {
    factors: Vec<usize>,
    n: usize,
}

impl Group {
    fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut c = vec![0; self.factors.len()];
        for (i, d) in self.factors.iter().enumerate().rev() {
            c[i] = x % d;
            x /= d;
        }
        c
    }

    fn index(&self, c: &[usize]) -> usize {
        c.iter().zip(&self.factors).fold(0, |acc, (x, d)| acc * d + x % d)
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        self.index(&a.iter().zip(&b).map(|(p, q)| p + q).collect::<Vec<_>>())
    }

    fn scale(&self, k: usize, x: usize) -> usize {
        self.index(&self.coords(x).iter().map(|c| c * k).collect::<Vec<_>>())
    }

    fn neg(&self, x: usize) -> usize {
        let c = self.coords(x);
        self.index(&c.iter().zip(&self.factors).map(|(v, d)| (d - v) % d).collect::<Vec<_>>())
    }

    fn generator(&self, i: usize) -> usize {
        let mut c = vec![0; self.factors.len()];
        c[i] = 1;
        self.index(&c)
    }

    fn label(&self, x: usize) -> String {
        let c = self.coords(x);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            format!("({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingEnumeration {
    pub order: usize,
    /// Rings found per additive presentation, before isomorphism reduction.
    pub presentations: usize,
    /// One ring per isomorphism class, ordered by canonical form.
    pub rings: Vec<RingStructure>,
}

/// Unitary rings of order `n` with `1 + 1` invertible, up to isomorphism.
///
/// Groups with an element of order two are skipped: there `2·x = 0` for some
/// `x ≠ 0`, so `1 + 1` cannot be a unit.
pub fn enumerate_rings_with_half(n: usize) -> Result<RingEnumeration, SearchError> {
    if n > super::CANONICAL_CAP {
        return Err(SearchError::TooLarge { what: "ring enumeration", n, cap: super::CANONICAL_CAP });
    }
    let mut found = Vec::new();
    for factors in abelian_groups(n.max(1)) {
        if n.is_multiple_of(2) {
            continue;
        }
        let g = Group { n: n.max(1), factors };
        rings_on(&g, &mut found)?;
    }
    if n == 0 {
        found.clear();
    }
    let presentations = found.len();
    let mut classes = BTreeMap::new();
    for r in found {
        classes.entry(canonical_form(&Structure::Ring(r.clone()))?).or_insert(r);
    }
    Ok(RingEnumeration { order: n, presentations, rings: classes.into_values().collect() })
}

fn rings_on(g: &Group, out: &mut Vec<RingStructure>) -> Result<(), SearchError> {
    let k = g.factors.len();
    let n = g.n;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let options: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(i, j)| {
            let d = gcd(g.factors[i], g.factors[j]);
            (0..n).filter(|&x| g.scale(d, x) == 0).collect()
        })
        .collect();
    let total: u64 = options.iter().map(|o| o.len() as u64).product();
    if total > RING_ASSIGNMENT_CAP {
        return Err(SearchError::TooLarge { what: "ring multiplication search", n, cap: super::CANONICAL_CAP });
    }
    let gens: Vec<usize> = (0..k).map(|i| g.generator(i)).collect();
    let coords: Vec<Vec<usize>> = (0..n).map(|x| g.coords(x)).collect();
    let mut choice = vec![0usize; pairs.len()];
    for _ in 0..total {
        let prod = |i: usize, j: usize| options[i * k + j][choice[i * k + j]];
        let mul = |x: usize, y: usize| -> usize {
            let mut acc = 0;
            for i in 0..k {
                for j in 0..k {
                    let coef = coords[x][i] * coords[y][j];
                    if coef != 0 {
                        acc = g.add(acc, g.scale(coef, prod(i, j)));
                    }
                }
            }
            acc
        };
        let associative = (0..k).all(|i| {
            (0..k).all(|j| (0..k).all(|l| mul(mul(gens[i], gens[j]), gens[l]) == mul(gens[i], mul(gens[j], gens[l]))))
        });
        if associative {
            let unit = (0..n).find(|&u| gens.iter().all(|&e| mul(u, e) == e && mul(e, u) == e));
            let unit = unit.or(if n == 1 { Some(0) } else { None });
            if let Some(u) = unit {
                let two = g.add(u, u);
                if (0..n).any(|x| mul(two, x) == u && mul(x, two) == u) {
                    out.push(build(g, &mul, u, out.len())?);
                }
            }
        }
        for slot in (0..choice.len()).rev() {
            choice[slot] += 1;
            if choice[slot] < options[slot].len() {
                break;
            }
            choice[slot] = 0;
        }
    }
    Ok(())
}

fn build(g: &Group, mul: &dyn Fn(usize, usize) -> usize, unit: usize, k: usize) -> Result<RingStructure, SearchError> {
    let n = g.n;
    let carrier = Carrier::finite((0..n).map(|x| g.label(x)));
    let add = Table::from_fn(n, 2, |a| g.add(a[0], a[1]));
    let times = Table::from_fn(n, 2, |a| mul(a[0], a[1]));
    let neg = Table::from_fn(n, 1, |a| g.neg(a[0]));
    let name = format!(
        "ring{n}-{}-{k}",
        g.factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    );
    Ok(RingStructure::new(
        name,
        carrier,
        OpImpl::Table(add),
        OpImpl::Table(times),
        OpImpl::Table(neg),
        Value::Label(0),
        Value::Label(unit),
    )?)
}
