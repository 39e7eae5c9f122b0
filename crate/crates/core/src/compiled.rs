// Index-based formula form for the enumeration loops.
//
// Valuations over n atoms are numbered 0..2^n with the first atom as the most
// significant bit. A set of valuations (a cell) is a u64 bitmask, so cell
// evaluation needs n <= 6.

use crate::error::LogicError;
use crate::formula::{Atom, Formula};

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Top,
    Bottom,
    Var(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Know(Box<Node>),
}

pub(crate) fn compile(f: &Formula, order: &[Atom]) -> Result<Node, LogicError> {
    let bin = |a: &Formula, b: &Formula| -> Result<(Box<Node>, Box<Node>), LogicError> {
        Ok((Box::new(compile(a, order)?), Box::new(compile(b, order)?)))
    };
    Ok(match f {
        Formula::Top => Node::Top,
        Formula::Bottom => Node::Bottom,
        Formula::Var(a) => match order.binary_search(a) {
            Ok(i) => Node::Var(i),
            Err(_) => return Err(LogicError::UnknownAtom(a.clone())),
        },
        Formula::Not(g) => Node::Not(Box::new(compile(g, order)?)),
        Formula::Know(g) => Node::Know(Box::new(compile(g, order)?)),
        Formula::And(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::Or(a, b)
        }
        Formula::Implies(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::Implies(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = bin(a, b)?;
            Node::Iff(a, b)
        }
    })
}

/// Bit of atom `atom` in valuation number `row` over `n` atoms.
#[inline]
pub(crate) fn row_bit(n: usize, row: u64, atom: usize) -> bool {
    (row >> (n - 1 - atom)) & 1 == 1
}

impl Node {
    /// Classical value at valuation number `row`. The node must be K-free.
    pub(crate) fn eval_row(&self, n: usize, row: u64) -> bool {
        match self {
            Node::Top => true,
            Node::Bottom => false,
            Node::Var(i) => row_bit(n, row, *i),
            Node::Not(g) => !g.eval_row(n, row),
            Node::And(a, b) => a.eval_row(n, row) && b.eval_row(n, row),
            Node::Or(a, b) => a.eval_row(n, row) || b.eval_row(n, row),
            Node::Implies(a, b) => !a.eval_row(n, row) || b.eval_row(n, row),
            Node::Iff(a, b) => a.eval_row(n, row) == b.eval_row(n, row),
            Node::Know(_) => unreachable!("K-free precondition violated"),
        }
    }

    /// The worlds of `cell` where the formula holds, with `K` read over the whole cell.
    pub(crate) fn eval_cell(&self, vars: &VarMasks, cell: u64) -> u64 {
        match self {
            Node::Top => cell,
            Node::Bottom => 0,
            Node::Var(i) => vars.0[*i] & cell,
            Node::Not(g) => cell & !g.eval_cell(vars, cell),
            Node::And(a, b) => a.eval_cell(vars, cell) & b.eval_cell(vars, cell),
            Node::Or(a, b) => a.eval_cell(vars, cell) | b.eval_cell(vars, cell),
            Node::Implies(a, b) => (cell & !a.eval_cell(vars, cell)) | b.eval_cell(vars, cell),
            Node::Iff(a, b) => cell & !(a.eval_cell(vars, cell) ^ b.eval_cell(vars, cell)),
            Node::Know(g) => {
                if g.eval_cell(vars, cell) == cell {
                    cell
                } else {
                    0
                }
            }
        }
    }
}

/// For each atom, the set of valuation numbers that make it true.
pub(crate) struct VarMasks(Vec<u64>);

impl VarMasks {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n <= 6, "cell masks hold at most 64 valuations");
        let rows = 1u64 << n;
        VarMasks(
            (0..n)
                .map(|i| (0..rows).filter(|&r| row_bit(n, r, i)).fold(0u64, |m, r| m | (1 << r)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn order(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::new(n).unwrap()).collect()
    }

    #[test]
    fn var_masks_follow_msb_first_order() {
        let m = VarMasks::new(2);
        // rows: 0=00 1=01 2=10 3=11 over (a, b)
        assert_eq!(m.0, vec![0b1100, 0b1010]);
    }

    #[test]
    fn cell_evaluation_of_knowledge() {
        let ord = order(&["q", "r"]);
        let vars = VarMasks::new(2);
        let cell = 0b0110; // {q=0 r=1, q=1 r=0}
        let kqr = compile(&parse("K(q | r)").unwrap(), &ord).unwrap();
        let kq = compile(&parse("K(q)").unwrap(), &ord).unwrap();
        assert_eq!(kqr.eval_cell(&vars, cell), cell);
        assert_eq!(kq.eval_cell(&vars, cell), 0);
    }

    #[test]
    fn unknown_atom_is_reported() {
        let err = compile(&parse("p & z").unwrap(), &order(&["p"])).unwrap_err();
        assert_eq!(err, LogicError::UnknownAtom(Atom::new("z").unwrap()));
    }
}
