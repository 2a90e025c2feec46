//! Abstract syntax for first-order formulas with the absoluteness operator,
//! plus the structural operations the rest of the workbench relies on.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parse::{parse, parse_with_warnings, ParseError, ParseWarning};
pub use print::{print, print_raw, print_with, PrintMode};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// A nullary function symbol. Written `c()` in the concrete syntax.
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn rename_var(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename_var(from, to)).collect()),
        }
    }

    fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(var, by)).collect()),
        }
    }

    fn collect_funcs(&self, out: &mut BTreeMap<String, usize>, clashes: &mut Vec<String>) {
        let (name, arity) = match self {
            Term::Var(_) => return,
            Term::Const(c) => (c, 0),
            Term::App(f, args) => {
                args.iter().for_each(|a| a.collect_funcs(out, clashes));
                (f, args.len())
            }
        };
        match out.get(name) {
            Some(&a) if a != arity => clashes.push(name.clone()),
            Some(_) => {}
            None => {
                out.insert(name.clone(), arity);
            }
        }
    }

    pub fn has_functions(&self) -> bool {
        !matches!(self, Term::Var(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Top,
    Atom(String, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Delta(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }

    pub fn bind(self, var: impl Into<String>, body: Formula) -> Formula {
        match self {
            Quantifier::Forall => Formula::Forall(var.into(), Box::new(body)),
            Quantifier::Exists => Formula::Exists(var.into(), Box::new(body)),
        }
    }
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Atom(name.to_string(), Vec::new())
    }

    /// Unary atom applied to a variable, `P(x)`.
    pub fn pred1(name: &str, var: &str) -> Formula {
        Formula::Atom(name.to_string(), vec![Term::var(var)])
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn delta(a: Formula) -> Formula {
        Formula::Delta(Box::new(a))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    /// The `<` abbreviation, `(A -> B) -> A`.
    pub fn less(a: Formula, b: Formula) -> Formula {
        Formula::implies(Formula::implies(a.clone(), b), a)
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    pub fn as_quantifier(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((Quantifier::Forall, v, b)),
            Formula::Exists(v, b) => Some((Quantifier::Exists, v, b)),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bottom | Formula::Top => {}
            Formula::Atom(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|a| a.collect_vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Delta(a) => a.collect_free(bound, out),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, var: &str) -> bool {
        match self {
            Formula::Bottom | Formula::Top => false,
            Formula::Atom(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|a| a.collect_vars(&mut vs));
                vs.contains(var)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_free(var) || b.has_free(var),
            Formula::Delta(a) => a.has_free(var),
            Formula::Forall(v, a) | Formula::Exists(v, a) => v != var && a.has_free(var),
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(&mut out)),
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Bottom | Formula::Top | Formula::Atom(..) => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Delta(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit(f),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut qf = true;
        self.visit(&mut |f| {
            if f.as_quantifier().is_some() {
                qf = false;
            }
        });
        qf
    }

    pub fn has_delta(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            if matches!(f, Formula::Delta(_)) {
                found = true;
            }
        });
        found
    }

    pub fn has_forall(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            if matches!(f, Formula::Forall(..)) {
                found = true;
            }
        });
        found
    }

    /// True iff every atom is nullary and there are no quantifiers.
    pub fn is_propositional(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) if !args.is_empty() => ok = false,
            Formula::Forall(..) | Formula::Exists(..) => ok = false,
            _ => {}
        });
        ok
    }

    /// Names of nullary predicate atoms, sorted.
    pub fn prop_atoms(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p, args) = f {
                if args.is_empty() {
                    out.insert(p.clone());
                }
            }
        });
        out.into_iter().collect()
    }

    /// Predicate symbols with their arity.
    pub fn predicates(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p, args) = f {
                out.entry(p.clone()).or_insert(args.len());
            }
        });
        out
    }

    /// Function symbols (constants have arity 0).
    pub fn functions(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        let mut clashes = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Atom(_, args) = f {
                args.iter().for_each(|a| a.collect_funcs(&mut out, &mut clashes));
            }
        });
        out
    }

    /// Checks that every predicate and function symbol is used with one arity.
    /// Returns the offending symbol names otherwise.
    pub fn check_arities(&self) -> Result<(), Vec<String>> {
        let mut preds: BTreeMap<String, usize> = BTreeMap::new();
        let mut funcs = BTreeMap::new();
        let mut clashes = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p, args) = f {
                match preds.get(p) {
                    Some(&a) if a != args.len() => clashes.push(p.clone()),
                    Some(_) => {}
                    None => {
                        preds.insert(p.clone(), args.len());
                    }
                }
                args.iter().for_each(|a| a.collect_funcs(&mut funcs, &mut clashes));
            }
        });
        if clashes.is_empty() {
            Ok(())
        } else {
            clashes.sort();
            clashes.dedup();
            Err(clashes)
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Top | Formula::Atom(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Delta(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Replaces free occurrences of `var` by `by`. The caller guarantees that
    /// no variable of `by` is captured.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        match self {
            Formula::Bottom | Formula::Top => self.clone(),
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.substitute(var, by)).collect()),
            Formula::And(a, b) => Formula::and(a.substitute(var, by), b.substitute(var, by)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, by), b.substitute(var, by)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(var, by), b.substitute(var, by)),
            Formula::Delta(a) => Formula::delta(a.substitute(var, by)),
            Formula::Forall(v, _) | Formula::Exists(v, _) if v == var => self.clone(),
            Formula::Forall(v, a) => Formula::forall(v, a.substitute(var, by)),
            Formula::Exists(v, a) => Formula::exists(v, a.substitute(var, by)),
        }
    }

    /// Renames free occurrences of a variable.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Bottom | Formula::Top => self.clone(),
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.rename_var(from, to)).collect()),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => Formula::implies(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Delta(a) => Formula::delta(a.rename_free(from, to)),
            Formula::Forall(v, _) | Formula::Exists(v, _) if v == from => self.clone(),
            Formula::Forall(v, a) => Formula::forall(v, a.rename_free(from, to)),
            Formula::Exists(v, a) => Formula::exists(v, a.rename_free(from, to)),
        }
    }

    /// Replaces every atom (not `bot`/`top`) using `f`.
    pub fn map_atoms(&self, f: &impl Fn(&Formula) -> Formula) -> Formula {
        match self {
            Formula::Bottom | Formula::Top => self.clone(),
            Formula::Atom(..) => f(self),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Delta(a) => Formula::delta(a.map_atoms(f)),
            Formula::Forall(v, a) => Formula::forall(v, a.map_atoms(f)),
            Formula::Exists(v, a) => Formula::exists(v, a.map_atoms(f)),
        }
    }

    /// Universal closure over the free variables, in sorted order.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars().into_iter().rev().fold(self.clone(), |acc, v| Formula::Forall(v, Box::new(acc)))
    }

    pub fn existential_closure(&self) -> Formula {
        self.free_vars().into_iter().rev().fold(self.clone(), |acc, v| Formula::Exists(v, Box::new(acc)))
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn go(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
            match (a, b) {
                (Formula::Bottom, Formula::Bottom) | (Formula::Top, Formula::Top) => true,
                (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
                    p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
                }
                (Formula::And(a1, a2), Formula::And(b1, b2))
                | (Formula::Or(a1, a2), Formula::Or(b1, b2))
                | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => go(a1, b1, env) && go(a2, b2, env),
                (Formula::Delta(a), Formula::Delta(b)) => go(a, b, env),
                (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                    env.push((x.clone(), y.clone()));
                    let r = go(a, b, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        fn term_eq(a: &Term, b: &Term, env: &[(String, String)]) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    for (l, r) in env.iter().rev() {
                        if l == x || r == y {
                            return l == x && r == y;
                        }
                    }
                    x == y
                }
                (Term::Const(c), Term::Const(d)) => c == d,
                (Term::App(f, xs), Term::App(g, ys)) => {
                    f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}()"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Produces names `base`, `base1`, `base2`, ... avoiding a set of taken names.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{stem}{i}")).find(|n| !taken.contains(n)).expect("unbounded")
}

/// Renames bound variables so that all binders are pairwise distinct and
/// distinct from the free variables. Free variables are untouched.
pub fn rectify(f: &Formula) -> Formula {
    let mut taken = f.free_vars();
    let mut used_binders = BTreeSet::new();
    fn go(f: &Formula, taken: &mut BTreeSet<String>, used: &mut BTreeSet<String>) -> Formula {
        match f {
            Formula::Bottom | Formula::Top | Formula::Atom(..) => f.clone(),
            Formula::And(a, b) => {
                let a = go(a, taken, used);
                Formula::and(a, go(b, taken, used))
            }
            Formula::Or(a, b) => {
                let a = go(a, taken, used);
                Formula::or(a, go(b, taken, used))
            }
            Formula::Implies(a, b) => {
                let a = go(a, taken, used);
                Formula::implies(a, go(b, taken, used))
            }
            Formula::Delta(a) => Formula::delta(go(a, taken, used)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = f.as_quantifier().unwrap().0;
                let mut blocked = taken.clone();
                blocked.extend(used.iter().cloned());
                // inner binders must not capture the renamed variable
                blocked.extend(body.all_vars().into_iter().filter(|w| w != v));
                let name = fresh_name(v, &blocked);
                used.insert(name.clone());
                let body = if &name == v { (**body).clone() } else { body.rename_free(v, &name) };
                let body = go(&body, taken, used);
                q.bind(name, body)
            }
        }
    }
    go(f, &mut taken, &mut used_binders)
}

/// True iff the formula is a (possibly empty) quantifier prefix followed by
/// a quantifier-free matrix.
pub fn is_prenex(f: &Formula) -> bool {
    match f {
        Formula::Forall(_, b) | Formula::Exists(_, b) => is_prenex(b),
        other => other.is_quantifier_free(),
    }
}

/// Splits a prenex formula into its prefix and matrix.
pub fn split_prefix(f: &Formula) -> (Vec<(Quantifier, String)>, &Formula) {
    let mut prefix = Vec::new();
    let mut cur = f;
    while let Some((q, v, b)) = cur.as_quantifier() {
        prefix.push((q, v.to_string()));
        cur = b;
    }
    (prefix, cur)
}

pub fn with_prefix(prefix: &[(Quantifier, String)], matrix: Formula) -> Formula {
    prefix.iter().rev().fold(matrix, |acc, (q, v)| q.bind(v.clone(), acc))
}
