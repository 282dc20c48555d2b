//! Recovering a ternary `p` from an IMM by solving, per triple, the
//! equation that characterises it.

use serde::Serialize;

use super::TransformError;
use crate::model::{ImmStructure, ModelError, MobiStructure, OpImpl, Table, Value};
use crate::search::engine::{self, CellOrder, EngineConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationForm {
    /// `1̄ ⊕ x = (b̄·a) ⊕ (b·c)`
    OplusForm,
    /// `½ · x = (b̄·a) ⊕ (b·c)` with `½ = 1̄⊕1`
    HalfDotForm,
}

/// All solutions `x` for every triple, indexed `a·n² + b·n + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub form: EquationForm,
    pub n: usize,
    /// `(b̄·a) ⊕ (b·c)` per triple.
    pub rhs: Vec<usize>,
    pub solutions: Vec<Vec<usize>>,
}

impl SolutionSet {
    pub fn get(&self, a: usize, b: usize, c: usize) -> &[usize] {
        &self.solutions[(a * self.n + b) * self.n + c]
    }

    pub fn rhs_at(&self, a: usize, b: usize, c: usize) -> usize {
        self.rhs[(a * self.n + b) * self.n + c]
    }

    /// Every triple without a solution, in lexicographic order.
    pub fn unsolvable(&self) -> Vec<[usize; 3]> {
        (0..self.solutions.len()).filter(|&c| self.solutions[c].is_empty()).map(|c| self.triple(c)).collect()
    }

    fn triple(&self, cell: usize) -> [usize; 3] {
        let n = self.n;
        [cell / (n * n), (cell / n) % n, cell % n]
    }

    /// First triple, in lexicographic order, with no solution.
    pub fn first_unsolvable(&self) -> Option<[usize; 3]> {
        self.solutions.iter().position(Vec::is_empty).map(|c| self.triple(c))
    }

    /// First triple with more than one solution.
    pub fn first_ambiguous(&self) -> Option<[usize; 3]> {
        self.solutions.iter().position(|s| s.len() > 1).map(|c| self.triple(c))
    }
}

/// Solves the chosen equation for every triple of a finite IMM.
pub fn solve_p_equation(b: &ImmStructure, form: EquationForm) -> Result<SolutionSet, TransformError> {
    let n = b.carrier().size().ok_or(TransformError::InfiniteCarrier("solve_p_equation"))?;
    let zero = b.zero()?;
    let half = b.half()?;
    let label = Value::Label;
    let mut lhs = Vec::with_capacity(n);
    for x in 0..n {
        lhs.push(match form {
            EquationForm::OplusForm => b.oplus(&zero, &label(x))?,
            EquationForm::HalfDotForm => b.dot(&half, &label(x))?,
        });
    }
    let mut solutions = Vec::with_capacity(n * n * n);
    let mut rhs_cells = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for bb in 0..n {
            let left = b.dot(&b.inv(&label(bb))?, &label(a))?;
            for c in 0..n {
                let rhs = b.oplus(&left, &b.dot(&label(bb), &label(c))?)?;
                solutions.push((0..n).filter(|&x| lhs[x] == rhs).collect());
                rhs_cells.push(rhs.label().ok_or(ModelError::NonMember(rhs.to_string()))?);
            }
        }
    }
    Ok(SolutionSet { form, n, rhs: rhs_cells, solutions })
}

fn render_triple(b: &ImmStructure, t: [usize; 3]) -> [String; 3] {
    let labels = b.carrier().labels().expect("finite");
    t.map(|i| labels[i].clone())
}

fn mobi_from_cells(b: &ImmStructure, name: String, cells: Vec<u32>) -> Result<MobiStructure, TransformError> {
    let n = b.carrier().size().expect("finite");
    Ok(MobiStructure::new(
        name,
        b.carrier().clone(),
        OpImpl::Table(Table::new(n, 3, cells)?),
        b.zero()?,
        b.half()?,
        b.one().clone(),
    )?)
}

/// The unique `p` with `1̄ ⊕ p(a,b,c) = (b̄·a) ⊕ (b·c)`.
///
/// Fails with the first unsolvable triple, or with the first triple having
/// several solutions (which only happens when `⊕` is not cancellative).
pub fn imm_star_to_mobi(b: &ImmStructure) -> Result<MobiStructure, TransformError> {
    let set = solve_p_equation(b, EquationForm::OplusForm)?;
    if let Some(t) = set.first_unsolvable() {
        return Err(TransformError::Unsolvable { triple: render_triple(b, t) });
    }
    if let Some(t) = set.first_ambiguous() {
        let count = set.get(t[0], t[1], t[2]).len();
        return Err(TransformError::NotCancellative { triple: render_triple(b, t), count });
    }
    let cells = set.solutions.iter().map(|s| s[0] as u32).collect();
    mobi_from_cells(b, format!("mobi({})", b.name()), cells)
}

#[derive(Clone, Debug)]
pub enum DaggerOutcome {
    Found { structure: MobiStructure, nodes: u64 },
    NoneExists { nodes: u64 },
    CapExceeded { nodes: u64 },
}

pub const DAGGER_NODE_CAP: u64 = 10_000_000;

/// Searches for a `p` satisfying every mobi axiom except cancellation with
/// `½ · p(a,b,c) = (b̄·a) ⊕ (b·c)` for all triples.
///
/// Triples are assigned in lexicographic order and candidate values in
/// carrier order; the first complete assignment is returned.
pub fn mobi_dagger_search(b: &ImmStructure, cap: u64) -> Result<DaggerOutcome, TransformError> {
    let set = solve_p_equation(b, EquationForm::HalfDotForm)?;
    if set.first_unsolvable().is_some() {
        return Ok(DaggerOutcome::NoneExists { nodes: 0 });
    }
    let n = set.n;
    let label = |v: Value| v.label().expect("finite");
    let config = EngineConfig {
        n,
        zero: label(b.zero()?),
        half: label(b.half()?),
        one: label(b.one().clone()),
        cancellative: false,
        domains: Some(
            set.solutions.iter().map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x)).collect(),
        ),
        order: CellOrder::Lex,
        cap,
        max_solutions: Some(1),
    };
    let mut found = None;
    let stats = engine::run(&config, |cells| {
        found = Some(cells.iter().map(|&v| v as u32).collect::<Vec<u32>>());
    });
    Ok(match found {
        Some(cells) => DaggerOutcome::Found {
            structure: mobi_from_cells(b, format!("mobi-dagger({})", b.name()), cells)?,
            nodes: stats.nodes,
        },
        None if stats.capped => DaggerOutcome::CapExceeded { nodes: stats.nodes },
        None => DaggerOutcome::NoneExists { nodes: stats.nodes },
    })
}
