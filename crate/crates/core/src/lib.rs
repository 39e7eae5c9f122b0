//! Classical propositional logic enriched with a single-agent knowledge operator `K`,
//! decided over S5 models, plus generation of incompatibility axioms for
//! position/momentum interval observations under the uncertainty bound.
//!
//! ```
//! use epiq::{epistemic, formula::parse, Theory};
//!
//! let conj_law = parse("K(a & b) <-> K(a) & K(b)").unwrap();
//! assert!(epistemic::is_valid(&conj_law, &Theory::default()).unwrap().is_affirmative());
//! ```

pub mod classical;
mod compiled;
pub mod epistemic;
mod error;
pub mod exec;
pub mod formula;
pub mod quantum;

pub use classical::{ConstraintSet, TruthTable, Valuation};
pub use epistemic::{CheckResult, EpistemicModel, Theory};
pub use error::{LimitKind, LogicError};
pub use exec::Strategy;
pub use formula::{Atom, Formula, ParseError};
pub use quantum::{IntervalProposition, ObservableKind, PhysicsConfig, Rational};
