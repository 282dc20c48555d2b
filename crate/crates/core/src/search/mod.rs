//! Enumeration of small finite models, canonical forms and isomorphisms.

pub mod engine;
pub mod iso;
pub mod rings;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Carrier, MobiStructure, ModelError, OpImpl, Structure, Table, Value};
use engine::{CellOrder, EngineConfig, EngineStats};
pub use iso::{canonical_form, certify_map, find_isomorphism, verify_bijection, Bijection, CanonicalForm, Certificate, MobiusMap, CANONICAL_CAP};
pub use rings::{abelian_groups, enumerate_rings_with_half, RingEnumeration};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{0} needs a finite carrier")]
    InfiniteCarrier(&'static str),
    #[error("order {n} exceeds the limit {cap} for {what}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("cannot compare a {0} with a {1}")]
    KindMismatch(String, String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug)]
pub struct EnumerationTask {
    pub order: usize,
    pub up_to_iso: bool,
    pub node_cap: u64,
}

impl EnumerationTask {
    pub fn new(order: usize, up_to_iso: bool) -> Self {
        EnumerationTask { order, up_to_iso, node_cap: DEFAULT_NODE_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub order: usize,
    pub up_to_iso: bool,
    /// Labelled tables found, over every constant pattern.
    pub labeled: u64,
    /// Emitted structures: all labelled ones, or one per class.
    pub structures: Vec<MobiStructure>,
    pub nodes: u64,
    pub capped: bool,
    pub parity_pruned: bool,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.structures.len()
    }
}

/// Ways the three constants can coincide, as restricted growth strings
/// `(zero, half, one)` over the labels `e0, e1, e2`.
pub fn constant_patterns(order: usize) -> Vec<[usize; 3]> {
    [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, 2]]
        .into_iter()
        .filter(|p| p.iter().max().map_or(0, |m| m + 1) <= order)
        .collect()
}

pub fn element_labels(order: usize) -> Vec<String> {
    (0..order).map(|i| format!("e{i}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PatternStats {
    pub pattern: [usize; 3],
    pub nodes: u64,
    pub solutions: u64,
}

/// All mobi algebras on `{e0, …, e(n−1)}`, per constant pattern, optionally
/// reduced to one representative per isomorphism class.
pub fn enumerate_mobi(task: &EnumerationTask) -> Result<Enumeration, SearchError> {
    let n = task.order;
    if n == 0 || n > engine::MAX_ORDER {
        return Err(SearchError::TooLarge { what: "mobi enumeration", n, cap: engine::MAX_ORDER });
    }
    let carrier = Carrier::finite(element_labels(n));
    let mut out = Enumeration {
        order: n,
        up_to_iso: task.up_to_iso,
        labeled: 0,
        structures: Vec::new(),
        nodes: 0,
        capped: false,
        parity_pruned: false,
    };
    let mut budget = task.node_cap;
    for pattern in constant_patterns(n) {
        let cfg = EngineConfig {
            n,
            zero: pattern[0],
            half: pattern[1],
            one: pattern[2],
            cancellative: true,
            domains: None,
            order: CellOrder::SmallestDomain,
            cap: budget,
            max_solutions: None,
        };
        let mut tables: Vec<Vec<u32>> = Vec::new();
        let stats: EngineStats =
            engine::run(&cfg, |cells| tables.push(cells.iter().map(|&v| v as u32).collect()));
        budget = budget.saturating_sub(stats.nodes);
        out.nodes += stats.nodes;
        out.labeled += stats.solutions;
        out.capped |= stats.capped;
        out.parity_pruned |= stats.parity_pruned;
        for cells in tables {
            let p = OpImpl::Table(Table::new(n, 3, cells)?);
            let k = out.structures.len();
            out.structures.push(MobiStructure::new(
                format!("mobi{n}-{k}"),
                carrier.clone(),
                p,
                Value::Label(pattern[0]),
                Value::Label(pattern[1]),
                Value::Label(pattern[2]),
            )?);
        }
        if out.capped {
            break;
        }
    }
    if task.up_to_iso {
        out.structures = representatives(out.structures)?;
        for (k, m) in out.structures.iter_mut().enumerate() {
            *m = m.clone().with_name(format!("mobi{n}-{k}"));
        }
    }
    Ok(out)
}

/// One structure per isomorphism class, ordered by canonical form when the
/// order allows it, otherwise in discovery order.
pub fn representatives(list: Vec<MobiStructure>) -> Result<Vec<MobiStructure>, SearchError> {
    let n = list.first().and_then(|m| m.carrier().size()).unwrap_or(0);
    if n <= CANONICAL_CAP {
        let mut keyed = std::collections::BTreeMap::new();
        for m in list {
            let key = canonical_form(&Structure::Mobi(m.clone()))?;
            keyed.entry(key).or_insert(m);
        }
        return Ok(keyed.into_values().collect());
    }
    let mut reps: Vec<MobiStructure> = Vec::new();
    for m in list {
        let s = Structure::Mobi(m.clone());
        let mut fresh = true;
        for r in &reps {
            if find_isomorphism(&s, &Structure::Mobi(r.clone()))?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(m);
        }
    }
    Ok(reps)
}
