//! Direct evaluation over finite domains.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{EvalError, EvalTrace, TraceEntry};
use crate::formula::{Formula, Term};
use crate::interp::Interpretation;
use crate::value::Rat;

type Env = BTreeMap<String, u64>;

fn term(t: &Term, i: &Interpretation, env: &Env) -> Result<u64, EvalError> {
    match t {
        Term::Var(v) => env.get(v).copied().ok_or_else(|| EvalError::UnassignedVariable(v.clone())),
        Term::Const(c) => i
            .funcs
            .get(c)
            .and_then(|tab| tab.get(&Vec::new()))
            .copied()
            .ok_or_else(|| EvalError::MissingFunction(format!("{c}()"))),
        Term::App(g, args) => {
            let args = args.iter().map(|a| term(a, i, env)).collect::<Result<Vec<_>, _>>()?;
            i.funcs.get(g).and_then(|tab| tab.get(&args)).copied().ok_or_else(|| {
                let names: Vec<String> = args.iter().map(|a| i.element_name(*a)).collect();
                EvalError::MissingFunction(format!("{g}({})", names.join(",")))
            })
        }
    }
}

fn atom(p: &str, args: &[Term], i: &Interpretation, env: &Env) -> Result<Rat, EvalError> {
    let idx = args.iter().map(|a| term(a, i, env)).collect::<Result<Vec<_>, _>>()?;
    i.atoms.get(p).and_then(|tab| tab.get(&idx)).copied().ok_or_else(|| {
        let names: Vec<String> = idx.iter().map(|a| i.element_name(*a)).collect();
        EvalError::MissingAtom(if names.is_empty() { p.to_string() } else { format!("{p}({})", names.join(",")) })
    })
}

pub(super) fn imp(a: Rat, b: Rat) -> Rat {
    if a <= b {
        Rat::one()
    } else {
        b
    }
}

pub(super) fn delta(a: Rat) -> Rat {
    if a.is_one() {
        Rat::one()
    } else {
        Rat::zero()
    }
}

struct Ctx<'a> {
    i: &'a Interpretation,
    size: u64,
    trace: Option<EvalTrace>,
}

impl Ctx<'_> {
    fn value(&mut self, f: &Formula, env: &mut Env, depth: usize, top: bool) -> Result<Rat, EvalError> {
        // reserve the slot so that entries come out in pre-order
        let slot = match self.trace.as_mut() {
            Some(t) if top => {
                t.entries.push(TraceEntry { depth, formula: f.clone(), value: Rat::zero(), family: None, attained: None });
                Some(t.entries.len() - 1)
            }
            _ => None,
        };
        let (v, attained) = match f {
            Formula::Bottom => (Rat::zero(), None),
            Formula::Top => (Rat::one(), None),
            Formula::Atom(p, args) => (atom(p, args, self.i, env)?, None),
            Formula::And(a, b) => {
                let x = self.value(a, env, depth + 1, top)?;
                (x.min(self.value(b, env, depth + 1, top)?), None)
            }
            Formula::Or(a, b) => {
                let x = self.value(a, env, depth + 1, top)?;
                (x.max(self.value(b, env, depth + 1, top)?), None)
            }
            Formula::Implies(a, b) => {
                let x = self.value(a, env, depth + 1, top)?;
                (imp(x, self.value(b, env, depth + 1, top)?), None)
            }
            Formula::Delta(a) => (delta(self.value(a, env, depth + 1, top)?), None),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let universal = matches!(f, Formula::Forall(..));
                let saved = env.get(x).copied();
                let mut acc: Option<Rat> = None;
                for e in 0..self.size {
                    env.insert(x.clone(), e);
                    let v = self.value(body, env, depth + 1, false)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) if universal => a.min(v),
                        Some(a) => a.max(v),
                    });
                    let done = if universal { v.is_zero() } else { v.is_one() };
                    if done && self.trace.is_none() {
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(x.clone(), s),
                    None => env.remove(x),
                };
                (acc.expect("domains are nonempty"), Some(true))
            }
        };
        if let (Some(k), Some(t)) = (slot, self.trace.as_mut()) {
            t.entries[k].value = v;
            t.entries[k].attained = attained;
        }
        Ok(v)
    }
}

pub(super) fn eval(f: &Formula, i: &Interpretation, trace: bool) -> Result<(Rat, EvalTrace), EvalError> {
    let size = i.domain.size().expect("finite domain") as u64;
    let mut ctx = Ctx { i, size, trace: trace.then(EvalTrace::default) };
    let mut env = i.assign.clone();
    let v = ctx.value(f, &mut env, 0, true)?;
    Ok((v, ctx.trace.unwrap_or_default()))
}

pub(super) fn classical(f: &Formula, i: &Interpretation) -> Result<bool, EvalError> {
    fn go(f: &Formula, i: &Interpretation, size: u64, env: &mut Env) -> Result<bool, EvalError> {
        Ok(match f {
            Formula::Bottom => false,
            Formula::Top => true,
            Formula::Atom(p, args) => atom(p, args, i, env)?.is_one(),
            Formula::And(a, b) => go(a, i, size, env)? && go(b, i, size, env)?,
            Formula::Or(a, b) => go(a, i, size, env)? || go(b, i, size, env)?,
            Formula::Implies(a, b) => !go(a, i, size, env)? || go(b, i, size, env)?,
            Formula::Delta(a) => go(a, i, size, env)?,
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let universal = matches!(f, Formula::Forall(..));
                let saved = env.get(x).copied();
                let mut result = universal;
                for e in 0..size {
                    env.insert(x.clone(), e);
                    if go(body, i, size, env)? != universal {
                        result = !universal;
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(x.clone(), s),
                    None => env.remove(x),
                };
                result
            }
        })
    }
    let size = i.domain.size().expect("finite domain") as u64;
    go(f, i, size, &mut i.assign.clone())
}
