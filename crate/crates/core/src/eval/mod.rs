//! Exact evaluation of formulas under interpretations.

mod compiled;
mod finite;
mod nat;

use num_traits::{One, Zero};
use thiserror::Error;

pub use compiled::{unflatten, Compiled, Tables};

use crate::formula::{Formula, Term};
use crate::interp::{Domain, Interpretation};
use crate::seq::SeqValue;
use crate::value::{format_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("free variable '{0}' has no assignment")]
    UnassignedVariable(String),
    #[error("no value for atom {0}")]
    MissingAtom(String),
    #[error("no value for function application {0}")]
    MissingFunction(String),
    #[error("over ℕ only unary and nullary predicates applied to variables are allowed: {0}")]
    NotMonadic(String),
    #[error("function symbol '{0}' cannot be interpreted over ℕ")]
    FunctionOverNat(String),
    #[error("unsupported over ℕ: {0}")]
    Unsupported(String),
    #[error("atomic value {0} is not classical")]
    NotBoolean(String),
    #[error("classical evaluation needs a finite domain")]
    ClassicalNat,
}

/// One evaluated subformula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub formula: Formula,
    pub value: Rat,
    /// For quantifiers over ℕ: the instance family.
    pub family: Option<SeqValue>,
    /// For quantifiers: whether the infimum/supremum is a minimum/maximum.
    pub attained: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvalTrace {
    /// Subformulas evaluated under the interpretation's own assignment, in pre-order.
    pub entries: Vec<TraceEntry>,
    /// Every instance family met while evaluating over ℕ, nested ones included.
    pub families: Vec<SeqValue>,
}

impl EvalTrace {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&"  ".repeat(e.depth));
            out.push_str(&format!("{} = {}", e.formula, format_rat(&e.value)));
            if let Some(a) = e.attained {
                out.push_str(if a { " [attained]" } else { " [not attained]" });
            }
            if let Some(s) = &e.family {
                out.push_str(&format!(" family {s}"));
            }
            out.push('\n');
        }
        out
    }
}

fn check_assigned(f: &Formula, i: &Interpretation) -> Result<(), EvalError> {
    match f.free_vars().into_iter().find(|v| !i.assign.contains_key(v)) {
        Some(v) => Err(EvalError::UnassignedVariable(v)),
        None => Ok(()),
    }
}

fn check_monadic(f: &Formula) -> Result<(), EvalError> {
    let mut err = None;
    f.visit(&mut |g| {
        if let Formula::Atom(p, args) = g {
            for a in args {
                match a {
                    Term::Var(_) => {}
                    Term::Const(c) | Term::App(c, _) => {
                        err.get_or_insert(EvalError::FunctionOverNat(c.clone()));
                    }
                }
            }
            if args.len() > 1 {
                err.get_or_insert(EvalError::NotMonadic(format!("{p} has arity {}", args.len())));
            }
        }
    });
    err.map_or(Ok(()), Err)
}

pub fn eval(f: &Formula, i: &Interpretation) -> Result<Rat, EvalError> {
    eval_inner(f, i, false).map(|(v, _)| v)
}

pub fn eval_traced(f: &Formula, i: &Interpretation) -> Result<(Rat, EvalTrace), EvalError> {
    eval_inner(f, i, true)
}

fn eval_inner(f: &Formula, i: &Interpretation, trace: bool) -> Result<(Rat, EvalTrace), EvalError> {
    check_assigned(f, i)?;
    match &i.domain {
        Domain::Finite(_) => finite::eval(f, i, trace),
        Domain::Nat => {
            check_monadic(f)?;
            nat::eval(f, i, trace)
        }
    }
}

/// Two-valued evaluation over a finite domain with all atomic values in {0,1}.
pub fn classical_eval(f: &Formula, i: &Interpretation) -> Result<bool, EvalError> {
    check_assigned(f, i)?;
    if i.is_nat() {
        return Err(EvalError::ClassicalNat);
    }
    for table in i.atoms.values() {
        if let Some(v) = table.values().find(|v| !v.is_zero() && !v.is_one()) {
            return Err(EvalError::NotBoolean(format_rat(v)));
        }
    }
    finite::classical(f, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::value::rat;

    fn props(pairs: &[(&str, Rat)]) -> Interpretation {
        let mut i = Interpretation::finite(1);
        for (p, v) in pairs {
            i.set_prop(p, *v);
        }
        i
    }

    #[test]
    fn conditional_clauses() {
        let f = parse("A -> B").unwrap();
        assert_eq!(eval(&f, &props(&[("A", rat(3, 10)), ("B", rat(7, 10))])).unwrap(), rat(1, 1));
        assert_eq!(eval(&f, &props(&[("A", rat(7, 10)), ("B", rat(3, 10))])).unwrap(), rat(3, 10));
    }

    #[test]
    fn delta_clause() {
        let f = parse("D A").unwrap();
        assert_eq!(eval(&f, &props(&[("A", rat(9, 10))])).unwrap(), rat(0, 1));
        assert_eq!(eval(&f, &props(&[("A", rat(1, 1))])).unwrap(), rat(1, 1));
    }

    #[test]
    fn top_and_bottom() {
        let i = props(&[]);
        assert_eq!(eval(&Formula::Top, &i).unwrap(), rat(1, 1));
        assert_eq!(eval(&parse("bot -> bot").unwrap(), &i).unwrap(), rat(1, 1));
        assert_eq!(eval(&Formula::Bottom, &i).unwrap(), rat(0, 1));
    }

    #[test]
    fn nat_quantifiers() {
        let mut i = Interpretation::nat();
        i.set_seq("A", SeqValue::new(rat(0, 1), rat(1, 1), rat(2, 1)));
        assert_eq!(eval(&parse("A x. A(x)").unwrap(), &i).unwrap(), rat(0, 1));
        assert_eq!(eval(&parse("E x. A(x)").unwrap(), &i).unwrap(), rat(1, 2));
        let (_, t) = eval_traced(&parse("A x. A(x)").unwrap(), &i).unwrap();
        assert_eq!(t.entries[0].attained, Some(false));
        let f = parse("~A x. A(x) & A x. ~~A(x)").unwrap();
        assert_eq!(eval(&f, &i).unwrap(), rat(1, 1));
    }

    #[test]
    fn nat_rejects_functions_and_binary_predicates() {
        let i = Interpretation::nat();
        assert!(matches!(eval(&parse("A x. P(f(x))").unwrap(), &i), Err(EvalError::FunctionOverNat(_))));
        assert!(matches!(eval(&parse("A x. R(x, x)").unwrap(), &i), Err(EvalError::NotMonadic(_))));
    }

    #[test]
    fn unassigned_variable() {
        assert!(matches!(eval(&parse("P(x)").unwrap(), &Interpretation::finite(2)), Err(EvalError::UnassignedVariable(_))));
    }

    #[test]
    fn classical_examples() {
        let mut i = Interpretation::finite(2);
        i.set_atom("A", vec![0], rat(0, 1)).set_atom("A", vec![1], rat(1, 1)).set_prop("P", rat(0, 1));
        assert!(classical_eval(&parse("P | ~P").unwrap(), &i).unwrap());
        assert!(!classical_eval(&parse("~A x. A(x) & A x. ~~A(x)").unwrap(), &i).unwrap());
        i.set_prop("Q", rat(1, 2));
        assert!(matches!(classical_eval(&parse("Q").unwrap(), &i), Err(EvalError::NotBoolean(_))));
    }
}
