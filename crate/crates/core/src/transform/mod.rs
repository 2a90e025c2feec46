//! Prenexation by quantifier shifts, double-negation translations and
//! skolemization.

mod prenex;
mod skolem;

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::truthset::{SetClass, ShiftFamily};

pub use prenex::{prenexify, prenexify_pos_valid, shift_rules, validity_prenex_re, PrenexResult, TraceStep};
pub use skolem::{skolemize, SkolemMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("unsupported [{}]: {}", .0.code(), .0)]
    Unsupported(Unsupported),
    #[error("the translation is defined for formulas without D")]
    DeltaPresent,
    #[error("formula is not in prenex form")]
    NotPrenex,
}

/// Why a set's logic admits no prenex form of the requested kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unsupported {
    /// The class has no logically equivalent prenex forms.
    NoLogicalPrenex { set: String, class: SetClass },
    /// Prenex forms exist without D, but D cannot be moved past quantifiers.
    DeltaShiftUnavailable { set: String, class: SetClass },
    /// The class has no prenex forms with the same >0-valid formulas.
    NoPosValidPrenex { set: String, class: SetClass },
    /// A required shift is not available in the class.
    RuleUnavailable { set: String, rule: ShiftRule },
}

impl Unsupported {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> String {
        match self {
            Unsupported::NoLogicalPrenex { class, .. } => format!("no-logical-prenex:{}", class.label()),
            Unsupported::DeltaShiftUnavailable { class, .. } => format!("delta-shift-unavailable:{}", class.label()),
            Unsupported::NoPosValidPrenex { class, .. } => format!("no-pos-valid-prenex:{}", class.label()),
            Unsupported::RuleUnavailable { rule, .. } => format!("rule-unavailable:{rule}"),
        }
    }
}

impl fmt::Display for Unsupported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unsupported::NoLogicalPrenex { set, class } => {
                write!(f, "{set} ({}) has formulas without a logically equivalent prenex form", class.label())
            }
            Unsupported::DeltaShiftUnavailable { set, class } => {
                write!(f, "{set} ({}) cannot shift quantifiers out of D", class.label())
            }
            Unsupported::NoPosValidPrenex { set, class } => {
                write!(f, "{set} ({}) has formulas without a >0-validity equivalent prenex form", class.label())
            }
            Unsupported::RuleUnavailable { set, rule } => write!(f, "{set} does not admit the shift {rule}"),
        }
    }
}

/// Extraction rewrites moving one quantifier outwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShiftRule {
    /// `∀xA ∧ B → ∀x(A ∧ B)`
    ForallAnd,
    /// `∃xA ∧ B → ∃x(A ∧ B)`
    ExistsAnd,
    /// `∀xA ∨ B → ∀x(A ∨ B)`, whose hard direction is the quantifier shift S1.
    ForallOr,
    /// `∃xA ∨ B → ∃x(A ∨ B)`
    ExistsOr,
    /// `(∀xA ⊃ B) → ∃x(A ⊃ B)`, the shift S3.
    ForallAnte,
    /// `(∃xA ⊃ B) → ∀x(A ⊃ B)`
    ExistsAnte,
    /// `(B ⊃ ∀xA) → ∀x(B ⊃ A)`
    ForallCons,
    /// `(B ⊃ ∃xA) → ∃x(B ⊃ A)`, the shift S2.
    ExistsCons,
    /// `Δ∀xA → ∀xΔA`
    DeltaForall,
    /// `Δ∃xA → ∃xΔA`
    DeltaExists,
}

impl ShiftRule {
    pub const ALL: [ShiftRule; 10] = [
        ShiftRule::ForallAnd,
        ShiftRule::ExistsAnd,
        ShiftRule::ForallOr,
        ShiftRule::ExistsOr,
        ShiftRule::ForallAnte,
        ShiftRule::ExistsAnte,
        ShiftRule::ForallCons,
        ShiftRule::ExistsCons,
        ShiftRule::DeltaForall,
        ShiftRule::DeltaExists,
    ];

    /// The shift family gating this rule; `None` for intuitionistic shifts.
    pub fn family(self) -> Option<ShiftFamily> {
        match self {
            ShiftRule::ForallOr => Some(ShiftFamily::S1),
            ShiftRule::ExistsCons => Some(ShiftFamily::S2),
            ShiftRule::ForallAnte => Some(ShiftFamily::S3),
            ShiftRule::DeltaForall => Some(ShiftFamily::DeltaForall),
            ShiftRule::DeltaExists => Some(ShiftFamily::DeltaExists),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShiftRule::ForallAnd => "forall-and",
            ShiftRule::ExistsAnd => "exists-and",
            ShiftRule::ForallOr => "S1",
            ShiftRule::ExistsOr => "exists-or",
            ShiftRule::ForallAnte => "S3",
            ShiftRule::ExistsAnte => "exists-ante",
            ShiftRule::ForallCons => "forall-cons",
            ShiftRule::ExistsCons => "S2",
            ShiftRule::DeltaForall => "D-forall",
            ShiftRule::DeltaExists => "D-exists",
        }
    }

    /// The rule as a biconditional over a unary `A` and a nullary `B`.
    pub fn instance(self) -> Formula {
        let a = Formula::pred1("A", "x");
        let b = Formula::prop("B");
        let fa = || Formula::forall("x", a.clone());
        let ex = || Formula::exists("x", a.clone());
        let (lhs, rhs) = match self {
            ShiftRule::ForallAnd => (Formula::and(fa(), b.clone()), Formula::forall("x", Formula::and(a.clone(), b))),
            ShiftRule::ExistsAnd => (Formula::and(ex(), b.clone()), Formula::exists("x", Formula::and(a.clone(), b))),
            ShiftRule::ForallOr => (Formula::or(fa(), b.clone()), Formula::forall("x", Formula::or(a.clone(), b))),
            ShiftRule::ExistsOr => (Formula::or(ex(), b.clone()), Formula::exists("x", Formula::or(a.clone(), b))),
            ShiftRule::ForallAnte => (Formula::implies(fa(), b.clone()), Formula::exists("x", Formula::implies(a.clone(), b))),
            ShiftRule::ExistsAnte => (Formula::implies(ex(), b.clone()), Formula::forall("x", Formula::implies(a.clone(), b))),
            ShiftRule::ForallCons => (Formula::implies(b.clone(), fa()), Formula::forall("x", Formula::implies(b, a.clone()))),
            ShiftRule::ExistsCons => (Formula::implies(b.clone(), ex()), Formula::exists("x", Formula::implies(b, a.clone()))),
            ShiftRule::DeltaForall => (Formula::delta(fa()), Formula::forall("x", Formula::delta(a.clone()))),
            ShiftRule::DeltaExists => (Formula::delta(ex()), Formula::exists("x", Formula::delta(a.clone()))),
        };
        Formula::iff(lhs, rhs)
    }
}

impl fmt::Display for ShiftRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Double negation inside every `∀` and in front of the whole formula.
pub fn kuroda(f: &Formula) -> Result<Formula, TransformError> {
    if f.has_delta() {
        return Err(TransformError::DeltaPresent);
    }
    fn go(f: &Formula) -> Formula {
        match f {
            Formula::Bottom | Formula::Top | Formula::Atom(..) => f.clone(),
            Formula::And(a, b) => Formula::and(go(a), go(b)),
            Formula::Or(a, b) => Formula::or(go(a), go(b)),
            Formula::Implies(a, b) => Formula::implies(go(a), go(b)),
            Formula::Delta(a) => Formula::delta(go(a)),
            Formula::Forall(x, a) => Formula::forall(x, Formula::not(Formula::not(go(a)))),
            Formula::Exists(x, a) => Formula::exists(x, go(a)),
        }
    }
    Ok(Formula::not(Formula::not(go(f))))
}
