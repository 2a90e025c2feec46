//! Standard skolemization of prenex formulas.

use std::collections::BTreeSet;

use super::TransformError;
use crate::formula::{fresh_name, is_prenex, split_prefix, with_prefix, Formula, Quantifier, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkolemMode {
    /// Replace universal variables; the result is purely existential.
    Validity,
    /// Replace existential variables; the result is purely universal.
    Satisfiability,
}

/// Skolemizes a prenex formula. Free variables are first closed with the
/// quantifier being eliminated, so they become Skolem constants.
/// Skolem functions are named `f1, f2, …` and constants `c1, c2, …`,
/// skipping names already used.
pub fn skolemize(f: &Formula, mode: SkolemMode) -> Result<Formula, TransformError> {
    if !is_prenex(f) {
        return Err(TransformError::NotPrenex);
    }
    let (eliminated, kept) = match mode {
        SkolemMode::Validity => (Quantifier::Forall, Quantifier::Exists),
        SkolemMode::Satisfiability => (Quantifier::Exists, Quantifier::Forall),
    };
    let closed = match mode {
        SkolemMode::Validity => f.universal_closure(),
        SkolemMode::Satisfiability => f.existential_closure(),
    };
    let (prefix, matrix) = split_prefix(&closed);
    let mut taken: BTreeSet<String> = closed.functions().into_keys().collect();
    taken.extend(closed.predicates().into_keys());
    let mut matrix = matrix.clone();
    let mut outer: Vec<String> = Vec::new();
    let mut rest = Vec::new();
    for (q, v) in prefix {
        if q == kept {
            outer.push(v.clone());
            rest.push((q, v));
            continue;
        }
        debug_assert_eq!(q, eliminated);
        let term = if outer.is_empty() {
            let name = fresh_name("c1", &taken);
            taken.insert(name.clone());
            Term::Const(name)
        } else {
            let name = fresh_name("f1", &taken);
            taken.insert(name.clone());
            Term::App(name, outer.iter().map(|x| Term::var(x)).collect())
        };
        matrix = matrix.substitute(&v, &term);
    }
    Ok(with_prefix(&rest, matrix))
}
