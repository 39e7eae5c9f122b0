//! Single-agent S5 semantics.
//!
//! Truth at a world in S5 depends only on its equivalence class, and two worlds with
//! the same valuation are interchangeable, so a model is a non-empty set of distinct
//! valuations (the cell) plus a designated member. Searches enumerate every such
//! model over the relevant atoms in a fixed order:
//!
//! * valuations are numbered as binary counters with the first atom most significant;
//! * a cell is a bitmask over valuation numbers, tried in ascending order;
//! * within a cell, designated worlds are tried in ascending valuation order.
//!
//! The first hit is reported, so results are reproducible across runs and strategies.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::classical::{check_order, Valuation};
use crate::compiled::{compile, Node, VarMasks};
use crate::error::{LimitKind, LogicError};
use crate::exec::Strategy;
use crate::formula::{Atom, Formula};

pub const DEFAULT_MODAL_ATOM_LIMIT: usize = 4;
/// Cells are u64 masks over 2^n valuations and are enumerated by a u64 counter.
pub const MAX_MODAL_ATOMS: usize = 5;

/// A single S5 cluster: every world sees every world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicModel {
    atom_order: Arc<[Atom]>,
    worlds: Vec<Valuation>,
    designated: usize,
}

impl EpistemicModel {
    pub fn new(atom_order: Vec<Atom>, worlds: Vec<Vec<bool>>, designated: usize) -> Result<Self, LogicError> {
        check_order(&atom_order)?;
        if worlds.is_empty() {
            return Err(LogicError::InvalidModel("the cell must contain at least one world".into()));
        }
        if designated >= worlds.len() {
            return Err(LogicError::WorldOutOfRange { index: designated, worlds: worlds.len() });
        }
        let atom_order: Arc<[Atom]> = atom_order.into();
        let mut seen = BTreeSet::new();
        let mut cell = Vec::with_capacity(worlds.len());
        for bits in worlds {
            if bits.len() != atom_order.len() {
                return Err(LogicError::InvalidModel(format!(
                    "world has {} truth values for {} atoms",
                    bits.len(),
                    atom_order.len()
                )));
            }
            if !seen.insert(bits.clone()) {
                return Err(LogicError::InvalidModel("two worlds carry the same valuation".into()));
            }
            cell.push(Valuation::new(atom_order.to_vec(), bits)?);
        }
        Ok(EpistemicModel { atom_order, worlds: cell, designated })
    }

    fn from_cell(atom_order: Arc<[Atom]>, cell: u64, designated_row: u64) -> Self {
        let rows: Vec<u64> = (0..64).filter(|r| cell >> r & 1 == 1).collect();
        let designated = rows.iter().position(|&r| r == designated_row).expect("designated world in cell");
        let worlds = rows.into_iter().map(|r| Valuation::from_row(atom_order.clone(), r)).collect();
        EpistemicModel { atom_order, worlds, designated }
    }

    pub fn atom_order(&self) -> &[Atom] {
        &self.atom_order
    }

    pub fn worlds(&self) -> &[Valuation] {
        &self.worlds
    }

    pub fn designated(&self) -> usize {
        self.designated
    }

    pub fn designated_world(&self) -> &Valuation {
        &self.worlds[self.designated]
    }

    /// Whether every axiom holds at every world.
    pub fn satisfies(&self, theory: &Theory) -> Result<bool, LogicError> {
        for axiom in theory {
            for w in 0..self.worlds.len() {
                if !eval_modal(axiom, self, w)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Axioms that hold globally, at every world of a model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    axioms: Vec<Formula>,
}

impl Theory {
    pub fn new<I: IntoIterator<Item = Formula>>(axioms: I) -> Self {
        let mut t = Theory::default();
        for a in axioms {
            t.insert(a);
        }
        t
    }

    pub fn insert(&mut self, axiom: Formula) {
        if !self.axioms.contains(&axiom) {
            self.axioms.push(axiom);
        }
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut set = BTreeSet::new();
        for a in &self.axioms {
            a.collect_atoms(&mut set);
        }
        set.into_iter().collect()
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Theory::new(iter)
    }
}

impl<'a> IntoIterator for &'a Theory {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.axioms.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Valid,
    Invalid(EpistemicModel),
    Satisfiable(EpistemicModel),
    Unsatisfiable,
}

impl CheckResult {
    /// `Valid` and `Satisfiable` are affirmative.
    pub fn is_affirmative(&self) -> bool {
        matches!(self, CheckResult::Valid | CheckResult::Satisfiable(_))
    }

    pub fn model(&self) -> Option<&EpistemicModel> {
        match self {
            CheckResult::Invalid(m) | CheckResult::Satisfiable(m) => Some(m),
            _ => None,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            CheckResult::Valid => "VALID",
            CheckResult::Invalid(_) => "INVALID",
            CheckResult::Satisfiable(_) => "SATISFIABLE",
            CheckResult::Unsatisfiable => "UNSATISFIABLE",
        }
    }
}

/// Truth of `f` at world `world` of `m`; `K(φ)` holds iff φ holds at every world of the cell.
pub fn eval_modal(f: &Formula, m: &EpistemicModel, world: usize) -> Result<bool, LogicError> {
    let Some(w) = m.worlds.get(world) else {
        return Err(LogicError::WorldOutOfRange { index: world, worlds: m.worlds.len() });
    };
    Ok(match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Var(a) => w.get(a).ok_or_else(|| LogicError::UnknownAtom(a.clone()))?,
        Formula::Not(g) => !eval_modal(g, m, world)?,
        Formula::And(a, b) => {
            let (a, b) = (eval_modal(a, m, world)?, eval_modal(b, m, world)?);
            a && b
        }
        Formula::Or(a, b) => {
            let (a, b) = (eval_modal(a, m, world)?, eval_modal(b, m, world)?);
            a || b
        }
        Formula::Implies(a, b) => {
            let (a, b) = (eval_modal(a, m, world)?, eval_modal(b, m, world)?);
            !a || b
        }
        Formula::Iff(a, b) => eval_modal(a, m, world)? == eval_modal(b, m, world)?,
        Formula::Know(g) => {
            let mut all = true;
            for u in 0..m.worlds.len() {
                // evaluate every world so unknown atoms surface regardless of order
                all &= eval_modal(g, m, u)?;
            }
            all
        }
    })
}

/// Replaces every `K(φ)` by `φ`.
pub fn erase_k(f: &Formula) -> Formula {
    match f {
        Formula::Top | Formula::Bottom | Formula::Var(_) => f.clone(),
        Formula::Know(g) => erase_k(g),
        Formula::Not(g) => Formula::not(erase_k(g)),
        Formula::And(a, b) => Formula::and(erase_k(a), erase_k(b)),
        Formula::Or(a, b) => Formula::or(erase_k(a), erase_k(b)),
        Formula::Implies(a, b) => Formula::implies(erase_k(a), erase_k(b)),
        Formula::Iff(a, b) => Formula::iff(erase_k(a), erase_k(b)),
    }
}

/// Exhaustive S5 model search with a configurable atom limit and sweep strategy.
#[derive(Debug, Clone, Copy)]
pub struct ModalChecker {
    pub atom_limit: usize,
    pub strategy: Strategy,
}

impl Default for ModalChecker {
    fn default() -> Self {
        ModalChecker { atom_limit: DEFAULT_MODAL_ATOM_LIMIT, strategy: Strategy::default() }
    }
}

impl ModalChecker {
    pub fn with_atom_limit(atom_limit: usize) -> Self {
        ModalChecker { atom_limit, ..Self::default() }
    }

    pub fn is_satisfiable(&self, f: &Formula, theory: &Theory) -> Result<CheckResult, LogicError> {
        let mut atoms = BTreeSet::new();
        f.collect_atoms(&mut atoms);
        for a in theory {
            a.collect_atoms(&mut atoms);
        }
        let limit = self.atom_limit.min(MAX_MODAL_ATOMS);
        if atoms.len() > limit {
            return Err(LogicError::AtomLimitExceeded { kind: LimitKind::Modal, count: atoms.len(), limit });
        }
        let order: Arc<[Atom]> = atoms.into_iter().collect();
        let n = order.len();
        let goal = compile(f, &order)?;
        let axioms = theory.into_iter().map(|a| compile(a, &order)).collect::<Result<Vec<Node>, _>>()?;
        let vars = VarMasks::new(n);
        let cells = 1u64 << (1u64 << n);

        let holds = |cell: u64| {
            axioms.iter().all(|a| a.eval_cell(&vars, cell) == cell) && goal.eval_cell(&vars, cell) != 0
        };
        Ok(match self.strategy.find_first(1..cells, holds) {
            None => CheckResult::Unsatisfiable,
            Some(cell) => {
                let witnesses = goal.eval_cell(&vars, cell);
                let designated = u64::from(witnesses.trailing_zeros());
                CheckResult::Satisfiable(EpistemicModel::from_cell(order, cell, designated))
            }
        })
    }

    pub fn is_valid(&self, f: &Formula, theory: &Theory) -> Result<CheckResult, LogicError> {
        Ok(match self.is_satisfiable(&Formula::not(f.clone()), theory)? {
            CheckResult::Satisfiable(m) => CheckResult::Invalid(m),
            _ => CheckResult::Valid,
        })
    }

    pub fn are_equivalent(&self, f: &Formula, g: &Formula, theory: &Theory) -> Result<CheckResult, LogicError> {
        self.is_valid(&Formula::iff(f.clone(), g.clone()), theory)
    }
}

pub fn is_satisfiable(f: &Formula, theory: &Theory) -> Result<CheckResult, LogicError> {
    ModalChecker::default().is_satisfiable(f, theory)
}

pub fn is_valid(f: &Formula, theory: &Theory) -> Result<CheckResult, LogicError> {
    ModalChecker::default().is_valid(f, theory)
}

pub fn are_equivalent_modal(f: &Formula, g: &Formula, theory: &Theory) -> Result<CheckResult, LogicError> {
    ModalChecker::default().are_equivalent(f, g, theory)
}
