//! Two-valued semantics for K-free formulas: valuations, tautology and equivalence
//! checks, and truth tables whose rows can be ruled out by constraints.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::compiled::{compile, row_bit, Node};
use crate::error::{LimitKind, LogicError};
use crate::exec::Strategy;
use crate::formula::{Atom, Formula};

pub const DEFAULT_ATOM_LIMIT: usize = 16;
/// Row numbers are `u64`; tables beyond this are not representable at all.
pub const MAX_ATOMS: usize = 63;

/// A total assignment of truth values to a sorted, duplicate-free list of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    atom_order: Arc<[Atom]>,
    bits: Vec<bool>,
}

impl Valuation {
    pub fn new(atom_order: Vec<Atom>, bits: Vec<bool>) -> Result<Self, LogicError> {
        check_order(&atom_order)?;
        if atom_order.len() != bits.len() {
            return Err(LogicError::InvalidValuation(format!(
                "{} atoms but {} truth values",
                atom_order.len(),
                bits.len()
            )));
        }
        Ok(Valuation { atom_order: atom_order.into(), bits })
    }

    /// The valuation numbered `row` in canonical order (first atom most significant).
    pub(crate) fn from_row(atom_order: Arc<[Atom]>, row: u64) -> Self {
        let n = atom_order.len();
        let bits = (0..n).map(|i| row_bit(n, row, i)).collect();
        Valuation { atom_order, bits }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atom_order
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, atom: &Atom) -> Option<bool> {
        self.atom_order.binary_search(atom).ok().map(|i| self.bits[i])
    }

    /// Position of this valuation in canonical row order.
    pub fn row(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.atom_order.iter().zip(&self.bits).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}={}", u8::from(*b))?;
        }
        Ok(())
    }
}

pub(crate) fn check_order(atoms: &[Atom]) -> Result<(), LogicError> {
    if atoms.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(LogicError::InvalidValuation("atom order must be sorted and duplicate-free".into()))
    }
}

/// K-free formulas ruling out valuations. Insertion order is kept; duplicates are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    constraints: Vec<Formula>,
}

impl ConstraintSet {
    pub fn new<I: IntoIterator<Item = Formula>>(constraints: I) -> Result<Self, LogicError> {
        let mut set = ConstraintSet::default();
        for c in constraints {
            set.insert(c)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, constraint: Formula) -> Result<(), LogicError> {
        if !constraint.is_classical() {
            return Err(LogicError::ModalOperatorPresent(constraint));
        }
        if !self.constraints.contains(&constraint) {
            self.constraints.push(constraint);
        }
        Ok(())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.constraints.iter()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.constraints
    }
}

impl<'a> IntoIterator for &'a ConstraintSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.constraints.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub valuation: Valuation,
    /// Constraints falsified by this row; non-empty iff the row is excluded.
    pub violated: Vec<Formula>,
    /// One value per formula column, absent for excluded rows.
    pub values: Option<Vec<bool>>,
}

impl TableRow {
    pub fn is_excluded(&self) -> bool {
        self.values.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub atom_order: Vec<Atom>,
    pub formulas: Vec<Formula>,
    pub constraints: Vec<Formula>,
    pub rows: Vec<TableRow>,
}

impl TruthTable {
    pub fn excluded_rows(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| r.is_excluded())
    }

    pub fn feasible_rows(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.is_excluded())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TautologyVerdict {
    Tautology,
    Falsified(Valuation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Equivalent,
    Differs(Valuation),
}

/// Truth-functional evaluation of a K-free formula.
pub fn eval_classical(f: &Formula, v: &Valuation) -> Result<bool, LogicError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Var(a) => v.get(a).ok_or_else(|| LogicError::UnknownAtom(a.clone()))?,
        Formula::Not(g) => !eval_classical(g, v)?,
        Formula::And(a, b) => {
            let (a, b) = (eval_classical(a, v)?, eval_classical(b, v)?);
            a && b
        }
        Formula::Or(a, b) => {
            let (a, b) = (eval_classical(a, v)?, eval_classical(b, v)?);
            a || b
        }
        Formula::Implies(a, b) => {
            let (a, b) = (eval_classical(a, v)?, eval_classical(b, v)?);
            !a || b
        }
        Formula::Iff(a, b) => eval_classical(a, v)? == eval_classical(b, v)?,
        Formula::Know(_) => return Err(LogicError::ModalOperatorPresent(f.clone())),
    })
}

/// Exhaustive classical checks with a configurable atom limit and sweep strategy.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalChecker {
    pub atom_limit: usize,
    pub strategy: Strategy,
}

impl Default for ClassicalChecker {
    fn default() -> Self {
        ClassicalChecker { atom_limit: DEFAULT_ATOM_LIMIT, strategy: Strategy::default() }
    }
}

impl ClassicalChecker {
    pub fn with_atom_limit(atom_limit: usize) -> Self {
        ClassicalChecker { atom_limit, ..Self::default() }
    }

    fn prepare<'a, I>(&self, formulas: I) -> Result<Arc<[Atom]>, LogicError>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut atoms = BTreeSet::new();
        for f in formulas {
            if !f.is_classical() {
                return Err(LogicError::ModalOperatorPresent(f.clone()));
            }
            f.collect_atoms(&mut atoms);
        }
        let limit = self.atom_limit.min(MAX_ATOMS);
        if atoms.len() > limit {
            return Err(LogicError::AtomLimitExceeded {
                kind: LimitKind::Classical,
                count: atoms.len(),
                limit,
            });
        }
        Ok(atoms.into_iter().collect())
    }

    pub fn truth_table(&self, formulas: &[Formula], constraints: &ConstraintSet) -> Result<TruthTable, LogicError> {
        let order = self.prepare(formulas.iter().chain(constraints))?;
        let n = order.len();
        let columns = compile_all(formulas, &order)?;
        let checks = compile_all(constraints.as_slice(), &order)?;
        let rows = self.strategy.map_range(0..1u64 << n, |row| {
            let violated: Vec<Formula> = checks
                .iter()
                .zip(constraints)
                .filter(|(c, _)| !c.eval_row(n, row))
                .map(|(_, f)| f.clone())
                .collect();
            let values = violated
                .is_empty()
                .then(|| columns.iter().map(|c| c.eval_row(n, row)).collect());
            TableRow { valuation: Valuation::from_row(order.clone(), row), violated, values }
        });
        Ok(TruthTable {
            atom_order: order.to_vec(),
            formulas: formulas.to_vec(),
            constraints: constraints.as_slice().to_vec(),
            rows,
        })
    }

    pub fn is_tautology(&self, f: &Formula) -> Result<TautologyVerdict, LogicError> {
        let order = self.prepare([f])?;
        let n = order.len();
        let node = compile(f, &order)?;
        Ok(match self.strategy.find_first(0..1u64 << n, |row| !node.eval_row(n, row)) {
            None => TautologyVerdict::Tautology,
            Some(row) => TautologyVerdict::Falsified(Valuation::from_row(order, row)),
        })
    }

    pub fn are_equivalent_under(
        &self,
        constraints: &ConstraintSet,
        f: &Formula,
        g: &Formula,
    ) -> Result<EquivalenceVerdict, LogicError> {
        let order = self.prepare(constraints.iter().chain([f, g]))?;
        let n = order.len();
        let checks = compile_all(constraints.as_slice(), &order)?;
        let (fc, gc) = (compile(f, &order)?, compile(g, &order)?);
        let differs = |row: u64| {
            checks.iter().all(|c| c.eval_row(n, row)) && fc.eval_row(n, row) != gc.eval_row(n, row)
        };
        Ok(match self.strategy.find_first(0..1u64 << n, differs) {
            None => EquivalenceVerdict::Equivalent,
            Some(row) => EquivalenceVerdict::Differs(Valuation::from_row(order, row)),
        })
    }
}

fn compile_all(formulas: &[Formula], order: &[Atom]) -> Result<Vec<Node>, LogicError> {
    formulas.iter().map(|f| compile(f, order)).collect()
}

pub fn truth_table(formulas: &[Formula], constraints: &ConstraintSet) -> Result<TruthTable, LogicError> {
    ClassicalChecker::default().truth_table(formulas, constraints)
}

pub fn is_tautology(f: &Formula) -> Result<TautologyVerdict, LogicError> {
    ClassicalChecker::default().is_tautology(f)
}

pub fn are_equivalent_under(
    constraints: &ConstraintSet,
    f: &Formula,
    g: &Formula,
) -> Result<EquivalenceVerdict, LogicError> {
    ClassicalChecker::default().are_equivalent_under(constraints, f, g)
}
