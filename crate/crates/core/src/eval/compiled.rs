//! Formulas compiled against flat predicate and function tables, for
//! evaluating one formula under many finite interpretations.
//!
//! Values are any totally ordered type; searches use indices into a sorted
//! truth-value list, which preserves every Gödel connective.

use std::collections::BTreeMap;

use crate::formula::{Formula, Term};
use crate::interp::Interpretation;
use crate::value::Rat;

use super::EvalError;

#[derive(Debug, Clone)]
enum TermC {
    Var(usize),
    App(usize, Vec<TermC>),
}

#[derive(Debug, Clone)]
enum Node {
    Bot,
    Top,
    Atom(usize, Vec<TermC>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Delta(Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// Predicate tables are indexed row-major by argument tuples (first argument
/// most significant); function tables likewise, holding element indices.
pub struct Tables<'a, V> {
    pub size: usize,
    pub preds: &'a [Vec<V>],
    pub funcs: &'a [Vec<u32>],
}

#[derive(Debug, Clone)]
pub struct Compiled {
    root: Node,
    /// Predicate symbols with arities, in table order.
    pub preds: Vec<(String, usize)>,
    pub funcs: Vec<(String, usize)>,
    /// Free variables, occupying the first environment slots.
    pub free: Vec<String>,
    pub slots: usize,
}

struct Builder {
    preds: BTreeMap<String, (usize, usize)>,
    funcs: BTreeMap<String, (usize, usize)>,
    scope: Vec<(String, usize)>,
    slots: usize,
}

impl Builder {
    fn slot_of(&self, v: &str) -> usize {
        self.scope.iter().rev().find(|(n, _)| n == v).map(|(_, s)| *s).expect("variable in scope")
    }

    fn term(&mut self, t: &Term) -> TermC {
        match t {
            Term::Var(v) => TermC::Var(self.slot_of(v)),
            Term::Const(c) => TermC::App(self.func(c, 0), Vec::new()),
            Term::App(g, args) => {
                let a: Vec<TermC> = args.iter().map(|x| self.term(x)).collect();
                TermC::App(self.func(g, args.len()), a)
            }
        }
    }

    fn func(&mut self, name: &str, arity: usize) -> usize {
        let n = self.funcs.len();
        self.funcs.entry(name.to_string()).or_insert((n, arity)).0
    }

    fn node(&mut self, f: &Formula) -> Node {
        match f {
            Formula::Bottom => Node::Bot,
            Formula::Top => Node::Top,
            Formula::Atom(p, args) => {
                let n = self.preds.len();
                let idx = self.preds.entry(p.clone()).or_insert((n, args.len())).0;
                Node::Atom(idx, args.iter().map(|a| self.term(a)).collect())
            }
            Formula::And(a, b) => Node::And(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Or(a, b) => Node::Or(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Implies(a, b) => Node::Imp(Box::new(self.node(a)), Box::new(self.node(b))),
            Formula::Delta(a) => Node::Delta(Box::new(self.node(a))),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let slot = self.slots;
                self.slots += 1;
                self.scope.push((v.clone(), slot));
                let body = Box::new(self.node(a));
                self.scope.pop();
                if matches!(f, Formula::Forall(..)) {
                    Node::Forall(slot, body)
                } else {
                    Node::Exists(slot, body)
                }
            }
        }
    }
}

fn sorted(map: BTreeMap<String, (usize, usize)>) -> Vec<(String, usize)> {
    let mut v: Vec<(usize, String, usize)> = map.into_iter().map(|(n, (i, a))| (i, n, a)).collect();
    v.sort();
    v.into_iter().map(|(_, n, a)| (n, a)).collect()
}

impl Compiled {
    /// Symbols are numbered in order of first occurrence.
    pub fn new(f: &Formula) -> Compiled {
        let free: Vec<String> = f.free_vars().into_iter().collect();
        let mut b = Builder {
            preds: BTreeMap::new(),
            funcs: BTreeMap::new(),
            scope: free.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect(),
            slots: free.len(),
        };
        let root = b.node(f);
        Compiled { root, preds: sorted(b.preds), funcs: sorted(b.funcs), free, slots: b.slots }
    }

    pub fn pred_index(&self, name: &str) -> Option<usize> {
        self.preds.iter().position(|(n, _)| n == name)
    }

    /// Evaluates with `env` holding the free variables in its first slots.
    pub fn eval<V: Copy + Ord>(&self, t: &Tables<V>, bot: V, top: V, env: &mut [u32]) -> V {
        debug_assert!(env.len() >= self.slots);
        eval_node(&self.root, t, bot, top, env)
    }

    /// Flattens an interpretation's tables into the layout this formula expects.
    pub fn tables_of(&self, i: &Interpretation) -> Result<(Vec<Vec<Rat>>, Vec<Vec<u32>>), EvalError> {
        let k = i.domain.size().expect("finite domain");
        let mut preds = Vec::new();
        for (p, arity) in &self.preds {
            let mut table = Vec::with_capacity(k.pow(*arity as u32));
            for idx in 0..k.pow(*arity as u32) {
                let args = unflatten(idx, k, *arity);
                let v = i.atoms.get(p).and_then(|t| t.get(&args)).copied().ok_or_else(|| EvalError::MissingAtom(p.clone()))?;
                table.push(v);
            }
            preds.push(table);
        }
        let mut funcs = Vec::new();
        for (g, arity) in &self.funcs {
            let mut table = Vec::with_capacity(k.pow(*arity as u32));
            for idx in 0..k.pow(*arity as u32) {
                let args = unflatten(idx, k, *arity);
                let v = i.funcs.get(g).and_then(|t| t.get(&args)).copied().ok_or_else(|| EvalError::MissingFunction(g.clone()))?;
                table.push(v as u32);
            }
            funcs.push(table);
        }
        Ok((preds, funcs))
    }
}

/// Argument tuple for a row-major table index.
pub fn unflatten(mut idx: usize, k: usize, arity: usize) -> Vec<u64> {
    let mut out = vec![0u64; arity];
    for slot in out.iter_mut().rev() {
        *slot = (idx % k) as u64;
        idx /= k;
    }
    out
}

fn term_val<V>(t: &TermC, tab: &Tables<V>, env: &[u32]) -> u32 {
    match t {
        TermC::Var(s) => env[*s],
        TermC::App(g, args) => {
            let mut idx = 0usize;
            for a in args {
                idx = idx * tab.size + term_val(a, tab, env) as usize;
            }
            tab.funcs[*g][idx]
        }
    }
}

fn eval_node<V: Copy + Ord>(n: &Node, t: &Tables<V>, bot: V, top: V, env: &mut [u32]) -> V {
    match n {
        Node::Bot => bot,
        Node::Top => top,
        Node::Atom(p, args) => {
            let mut idx = 0usize;
            for a in args {
                idx = idx * t.size + term_val(a, t, env) as usize;
            }
            t.preds[*p][idx]
        }
        Node::And(a, b) => {
            let x = eval_node(a, t, bot, top, env);
            if x == bot {
                return bot;
            }
            x.min(eval_node(b, t, bot, top, env))
        }
        Node::Or(a, b) => {
            let x = eval_node(a, t, bot, top, env);
            if x == top {
                return top;
            }
            x.max(eval_node(b, t, bot, top, env))
        }
        Node::Imp(a, b) => {
            let x = eval_node(a, t, bot, top, env);
            if x == bot {
                return top;
            }
            let y = eval_node(b, t, bot, top, env);
            if x <= y {
                top
            } else {
                y
            }
        }
        Node::Delta(a) => {
            if eval_node(a, t, bot, top, env) == top {
                top
            } else {
                bot
            }
        }
        Node::Forall(s, body) => {
            let mut acc = top;
            for e in 0..t.size as u32 {
                env[*s] = e;
                acc = acc.min(eval_node(body, t, bot, top, env));
                if acc == bot {
                    break;
                }
            }
            acc
        }
        Node::Exists(s, body) => {
            let mut acc = bot;
            for e in 0..t.size as u32 {
                env[*s] = e;
                acc = acc.max(eval_node(body, t, bot, top, env));
                if acc == top {
                    break;
                }
            }
            acc
        }
    }
}
