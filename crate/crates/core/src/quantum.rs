//! Interval observations of a particle on a line, and the logical constraints the
//! uncertainty bound `Δp·Δx ≥ bound` imposes on them.
//!
//! `Δ` is the width of the declared interval. All arithmetic is exact.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::classical::ConstraintSet;
use crate::epistemic::Theory;
use crate::formula::{Atom, Formula};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObservableKind {
    Position,
    Momentum,
}

impl fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObservableKind::Position => "position",
            ObservableKind::Momentum => "momentum",
        })
    }
}

impl FromStr for ObservableKind {
    type Err = QuantumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "position" => Ok(ObservableKind::Position),
            "momentum" => Ok(ObservableKind::Momentum),
            other => Err(QuantumError::UnknownKind(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("expected a {expected} proposition, `{atom}` is a {found} proposition")]
    KindMismatch { atom: Atom, expected: ObservableKind, found: ObservableKind },
    /// Both intervals, rendered as `name [lo, hi]`.
    #[error("cannot merge {0} and {1}: the intervals are separated by a gap")]
    DisjointIntervals(String, String),
    #[error("atom `{0}` is declared more than once")]
    DuplicateAtom(Atom),
    #[error("interval for `{0}` must have lo < hi, got [{1}]")]
    EmptyInterval(Atom, String),
    #[error("uncertainty bound must be positive, got {0}")]
    NonPositiveBound(String),
    #[error("unknown observable kind `{0}` (expected position or momentum)")]
    UnknownKind(String),
}

/// "The measured value of `kind` lies in `[lo, hi]`", named by `atom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalProposition {
    atom: Atom,
    kind: ObservableKind,
    lo: Rational,
    hi: Rational,
}

impl IntervalProposition {
    pub fn new(atom: Atom, kind: ObservableKind, lo: Rational, hi: Rational) -> Result<Self, QuantumError> {
        if lo >= hi {
            return Err(QuantumError::EmptyInterval(atom, format!("{lo}, {hi}")));
        }
        Ok(IntervalProposition { atom, kind, lo, hi })
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn kind(&self) -> ObservableKind {
        self.kind
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    fn expect_kind(&self, expected: ObservableKind) -> Result<(), QuantumError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(QuantumError::KindMismatch { atom: self.atom.clone(), expected, found: self.kind })
        }
    }
}

impl fmt::Display for IntervalProposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}, {}]", self.atom, self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhysicsConfig {
    bound: Rational,
}

impl PhysicsConfig {
    pub fn new(bound: Rational) -> Result<Self, QuantumError> {
        if !bound.is_positive() {
            return Err(QuantumError::NonPositiveBound(bound.to_string()));
        }
        Ok(PhysicsConfig { bound })
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }
}

impl Default for PhysicsConfig {
    /// `ħ/2` with `ħ = 1`.
    fn default() -> Self {
        PhysicsConfig { bound: Rational::one() / BigInt::from(2) }
    }
}

pub fn width(prop: &IntervalProposition) -> Rational {
    prop.width()
}

/// `width(m) · width(x)` for a momentum proposition `m` and a position proposition `x`.
pub fn uncertainty_product(m: &IntervalProposition, x: &IntervalProposition) -> Result<Rational, QuantumError> {
    m.expect_kind(ObservableKind::Momentum)?;
    x.expect_kind(ObservableKind::Position)?;
    Ok(m.width() * x.width())
}

/// Whether both observations can be made together. A product equal to the bound is allowed.
pub fn compatible(m: &IntervalProposition, x: &IntervalProposition, cfg: &PhysicsConfig) -> Result<bool, QuantumError> {
    Ok(uncertainty_product(m, x)? >= cfg.bound)
}

/// One observation covering both intervals. They must overlap or touch.
pub fn merge(a: &IntervalProposition, b: &IntervalProposition, new_name: Atom) -> Result<IntervalProposition, QuantumError> {
    b.expect_kind(a.kind)?;
    let lo_inner = (&a.lo).max(&b.lo);
    let hi_inner = (&a.hi).min(&b.hi);
    if lo_inner > hi_inner {
        return Err(QuantumError::DisjointIntervals(a.to_string(), b.to_string()));
    }
    let lo = (&a.lo).min(&b.lo).clone();
    let hi = (&a.hi).max(&b.hi).clone();
    IntervalProposition::new(new_name, a.kind, lo, hi)
}

/// Why an incompatibility axiom was emitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub momentum: Atom,
    pub position: Atom,
    pub momentum_width: Rational,
    pub position_width: Rational,
    pub product: Rational,
    pub bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratedTheory {
    /// `K(m) -> !K(x)` per incompatible pair.
    pub epistemic_axioms: Theory,
    /// `!(m & x)` per incompatible pair.
    pub classical_constraints: ConstraintSet,
    /// Parallel to both lists above.
    pub provenance: Vec<Provenance>,
}

/// Axioms and constraints for every incompatible (momentum, position) pair, in
/// declaration order of the momentum proposition, then of the position proposition.
pub fn generate(props: &[IntervalProposition], cfg: &PhysicsConfig) -> Result<GeneratedTheory, QuantumError> {
    let mut seen = HashSet::new();
    for p in props {
        if !seen.insert(&p.atom) {
            return Err(QuantumError::DuplicateAtom(p.atom.clone()));
        }
    }
    let mut out = GeneratedTheory::default();
    let of_kind = |k| props.iter().filter(move |p| p.kind == k);
    for m in of_kind(ObservableKind::Momentum) {
        for x in of_kind(ObservableKind::Position) {
            let product = uncertainty_product(m, x)?;
            if product >= cfg.bound {
                continue;
            }
            let (km, kx) = (Formula::Var(m.atom.clone()), Formula::Var(x.atom.clone()));
            out.epistemic_axioms
                .insert(Formula::implies(Formula::know(km.clone()), Formula::not(Formula::know(kx.clone()))));
            out.classical_constraints
                .insert(Formula::not(Formula::and(km, kx)))
                .expect("generated constraints are K-free");
            out.provenance.push(Provenance {
                momentum: m.atom.clone(),
                position: x.atom.clone(),
                momentum_width: m.width(),
                position_width: x.width(),
                product,
                bound: cfg.bound.clone(),
            });
        }
    }
    Ok(out)
}
