use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Classical,
    Modal,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::Classical => f.write_str("classical"),
            LimitKind::Modal => f.write_str("modal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("`{0}` contains the knowledge operator K; classical evaluation needs a K-free formula")]
    ModalOperatorPresent(Formula),
    #[error("atom `{0}` is not assigned by the valuation")]
    UnknownAtom(Atom),
    #[error("{}", limit_message(*.kind, *.count, *.limit))]
    AtomLimitExceeded { kind: LimitKind, count: usize, limit: usize },
    #[error("world index {index} is out of range for a model with {worlds} worlds")]
    WorldOutOfRange { index: usize, worlds: usize },
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("invalid epistemic model: {0}")]
    InvalidModel(String),
}

fn limit_message(kind: LimitKind, count: usize, limit: usize) -> String {
    match kind {
        LimitKind::Classical => format!(
            "{count} atoms exceed the classical atom limit of {limit} (the table would have 2^{count} rows)"
        ),
        LimitKind::Modal => format!(
            "{count} atoms exceed the modal atom limit of {limit}: the model search ranges over \
             2^(2^{count}) - 1 candidate cells"
        ),
    }
}
