//! Interpretations over finite domains and over ℕ, their text format, and
//! the gluing transformation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero, Signed};
use thiserror::Error;

use crate::eval::{eval_traced, EvalError};
use crate::formula::Formula;
use crate::seq::{SeqError, SeqValue};
use crate::truthset::{GoedelSetDescriptor, SetKind, TruthSetError};
use crate::value::{format_rat, parse_truth, Rat, ValueError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("unknown domain element '{0}'")]
    UnknownElement(String),
    #[error("value {0} outside [0,1]")]
    OutOfRange(String),
    #[error("domains over ℕ admit only unary and nullary predicates without function symbols ({0})")]
    NotMonadic(String),
    #[error("gluing needs ω < 1")]
    OmegaTooLarge,
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    TruthSet(#[from] TruthSetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Finite(Vec<String>),
    Nat,
}

impl Domain {
    pub fn size(&self) -> Option<usize> {
        match self {
            Domain::Finite(names) => Some(names.len()),
            Domain::Nat => None,
        }
    }
}

/// Default element names: `a`..`z`, or `e0`, `e1`, ... for larger domains.
pub fn default_names(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("e{i}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub domain: Domain,
    pub truth_set: Option<GoedelSetDescriptor>,
    /// Predicate values keyed by argument tuples of element indices.
    pub atoms: BTreeMap<String, BTreeMap<Vec<u64>, Rat>>,
    /// Unary predicates over ℕ.
    pub seqs: BTreeMap<String, SeqValue>,
    pub funcs: BTreeMap<String, BTreeMap<Vec<u64>, u64>>,
    pub assign: BTreeMap<String, u64>,
}

impl Interpretation {
    pub fn finite(k: usize) -> Interpretation {
        Self::finite_named(default_names(k))
    }

    pub fn finite_named(names: Vec<String>) -> Interpretation {
        assert!(!names.is_empty(), "domains are nonempty");
        Interpretation {
            domain: Domain::Finite(names),
            truth_set: None,
            atoms: BTreeMap::new(),
            seqs: BTreeMap::new(),
            funcs: BTreeMap::new(),
            assign: BTreeMap::new(),
        }
    }

    pub fn nat() -> Interpretation {
        Interpretation { domain: Domain::Nat, ..Self::finite(1) }
    }

    pub fn is_nat(&self) -> bool {
        self.domain == Domain::Nat
    }

    pub fn set_atom(&mut self, pred: &str, args: Vec<u64>, v: Rat) -> &mut Self {
        self.atoms.entry(pred.to_string()).or_default().insert(args, v);
        self
    }

    pub fn set_prop(&mut self, pred: &str, v: Rat) -> &mut Self {
        self.set_atom(pred, Vec::new(), v)
    }

    pub fn set_seq(&mut self, pred: &str, s: SeqValue) -> &mut Self {
        self.seqs.insert(pred.to_string(), s);
        self
    }

    pub fn set_func(&mut self, f: &str, args: Vec<u64>, out: u64) -> &mut Self {
        self.funcs.entry(f.to_string()).or_default().insert(args, out);
        self
    }

    pub fn assign_var(&mut self, var: &str, e: u64) -> &mut Self {
        self.assign.insert(var.to_string(), e);
        self
    }

    pub fn element_name(&self, e: u64) -> String {
        match &self.domain {
            Domain::Finite(names) => names[e as usize].clone(),
            Domain::Nat => e.to_string(),
        }
    }

    pub fn element_index(&self, name: &str) -> Result<u64, InterpError> {
        match &self.domain {
            Domain::Finite(names) => names
                .iter()
                .position(|n| n == name)
                .map(|i| i as u64)
                .ok_or_else(|| InterpError::UnknownElement(name.to_string())),
            Domain::Nat => name.parse().map_err(|_| InterpError::UnknownElement(name.to_string())),
        }
    }

    /// All atomic values that occur: table entries and explicit sequence values.
    pub fn atomic_values(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self.atoms.values().flat_map(|t| t.values().copied()).collect();
        for s in self.seqs.values() {
            out.extend(s.explicit_values());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Applies `f` to every atomic value and every sequence.
    pub fn map_values(&self, f: impl Fn(Rat) -> Rat, g: impl Fn(&SeqValue) -> SeqValue) -> Interpretation {
        let mut out = self.clone();
        for table in out.atoms.values_mut() {
            for v in table.values_mut() {
                *v = f(*v);
            }
        }
        for s in out.seqs.values_mut() {
            *s = g(s);
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Interpretation, InterpError> {
        let mut interp: Option<Interpretation> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| InterpError::Format { line: line_no, message };
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            if keyword == "domain" {
                if interp.is_some() {
                    return Err(err("duplicate domain line".into()));
                }
                interp = Some(parse_domain(rest).map_err(err)?);
                continue;
            }
            let it = interp.as_mut().ok_or_else(|| err("the first line must declare the domain".into()))?;
            let at = |e: InterpError| match e {
                InterpError::Format { .. } => e,
                other => InterpError::Format { line: line_no, message: other.to_string() },
            };
            match keyword {
                "truthset" => {
                    it.truth_set = Some(GoedelSetDescriptor::builtin(rest).map_err(|e| at(e.into()))?);
                }
                "atom" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected 'atom P(a,...) = v'".into()))?;
                    let (name, args) = split_application(lhs.trim()).map_err(err)?;
                    let idx = args.iter().map(|a| it.element_index(a)).collect::<Result<Vec<_>, _>>().map_err(at)?;
                    let v = parse_truth(rhs).map_err(|e| at(e.into()))?;
                    if it.is_nat() && !idx.is_empty() {
                        return Err(err("over ℕ unary predicates are given by 'seq'".into()));
                    }
                    it.set_atom(&name, idx, v);
                }
                "seq" => {
                    if !it.is_nat() {
                        return Err(err("'seq' needs 'domain nat'".into()));
                    }
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected 'seq A = ...'".into()))?;
                    let mut words = lhs.split_whitespace();
                    let name = words.next().ok_or_else(|| err("missing predicate name".into()))?.to_string();
                    match (words.next(), words.next(), words.next()) {
                        (None, _, _) => {
                            let s = SeqValue::parse_closed_form(rhs).map_err(|e| at(e.into()))?;
                            let old = it.seqs.remove(&name);
                            let merged = match old {
                                Some(o) => o.overrides.into_iter().fold(s, |acc, (n, v)| acc.with_override(n, v)),
                                None => s,
                            };
                            it.seqs.insert(name, merged);
                        }
                        (Some("override"), Some(n), None) => {
                            let n: u64 = n.parse().map_err(|_| err(format!("bad index '{n}'")))?;
                            let v = parse_truth(rhs).map_err(|e| at(e.into()))?;
                            let s = it.seqs.remove(&name).ok_or_else(|| err(format!("override before 'seq {name} = ...'")))?;
                            it.seqs.insert(name, s.with_override(n, v));
                        }
                        _ => return Err(err("expected 'seq A = ...' or 'seq A override n = v'".into())),
                    }
                }
                "func" => {
                    if it.is_nat() {
                        return Err(at(InterpError::NotMonadic("function symbol".into())));
                    }
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected 'func f(a,...) = b'".into()))?;
                    let (name, args) = split_application(lhs.trim()).map_err(err)?;
                    let idx = args.iter().map(|a| it.element_index(a)).collect::<Result<Vec<_>, _>>().map_err(at)?;
                    let out = it.element_index(rhs.trim()).map_err(at)?;
                    it.set_func(&name, idx, out);
                }
                "assign" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected 'assign x = a'".into()))?;
                    let e = it.element_index(rhs.trim()).map_err(at)?;
                    it.assign_var(lhs.trim(), e);
                }
                other => return Err(err(format!("unknown keyword '{other}'"))),
            }
        }
        let interp = interp.ok_or(InterpError::Format { line: 0, message: "missing domain line".into() })?;
        for s in interp.seqs.values() {
            if !s.in_unit_interval() {
                return Err(InterpError::OutOfRange(s.to_string()));
            }
        }
        Ok(interp)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.domain {
            Domain::Finite(names) => {
                let _ = writeln!(out, "domain finite {} {}", names.len(), names.join(" "));
            }
            Domain::Nat => out.push_str("domain nat\n"),
        }
        if let Some(t) = &self.truth_set {
            let _ = writeln!(out, "truthset {}", t.name);
        }
        for (p, table) in &self.atoms {
            for (args, v) in table {
                let _ = writeln!(out, "atom {} = {}", self.application(p, args), format_rat(v));
            }
        }
        for (p, s) in &self.seqs {
            let _ = writeln!(out, "seq {p} = {}", s.closed_form_text());
            for (n, v) in &s.overrides {
                let _ = writeln!(out, "seq {p} override {n} = {}", format_rat(v));
            }
        }
        for (f, table) in &self.funcs {
            for (args, v) in table {
                let name = self.application(f, args);
                let name = if args.is_empty() { format!("{name}()") } else { name };
                let _ = writeln!(out, "func {name} = {}", self.element_name(*v));
            }
        }
        for (x, e) in &self.assign {
            let _ = writeln!(out, "assign {x} = {}", self.element_name(*e));
        }
        out
    }

    fn application(&self, name: &str, args: &[u64]) -> String {
        if args.is_empty() {
            name.to_string()
        } else {
            let names: Vec<String> = args.iter().map(|a| self.element_name(*a)).collect();
            format!("{name}({})", names.join(","))
        }
    }
}

fn parse_domain(rest: &str) -> Result<Interpretation, String> {
    let mut words = rest.split_whitespace();
    match words.next() {
        Some("nat") => Ok(Interpretation::nat()),
        Some("finite") => {
            let k: usize = words
                .next()
                .and_then(|k| k.parse().ok())
                .filter(|k| *k > 0)
                .ok_or_else(|| "expected 'domain finite k [names...]'".to_string())?;
            let names: Vec<String> = words.map(str::to_string).collect();
            if names.is_empty() {
                Ok(Interpretation::finite(k))
            } else if names.len() == k {
                Ok(Interpretation::finite_named(names))
            } else {
                Err(format!("{k} elements declared but {} names given", names.len()))
            }
        }
        _ => Err("expected 'domain finite k' or 'domain nat'".to_string()),
    }
}

fn split_application(text: &str) -> Result<(String, Vec<String>), String> {
    match text.split_once('(') {
        None => Ok((text.to_string(), Vec::new())),
        Some((name, args)) => {
            let args = args.strip_suffix(')').ok_or_else(|| format!("missing ')' in '{text}'"))?;
            let args: Vec<String> =
                args.split(',').map(|a| a.trim().to_string()).filter(|a| !a.is_empty()).collect();
            Ok((name.trim().to_string(), args))
        }
    }
}

fn glue_value(v: Rat, omega: Rat) -> Rat {
    if v <= omega {
        v
    } else {
        Rat::one()
    }
}

/// Values above ω become 1, the others stay.
pub fn glue(i: &Interpretation, omega: Rat) -> Result<Interpretation, InterpError> {
    if omega >= Rat::one() || omega < Rat::zero() {
        return Err(InterpError::OmegaTooLarge);
    }
    Ok(i.map_values(|v| glue_value(v, omega), |s| s.glue(omega)))
}

/// The value the gluing rule predicts for a formula whose value under the
/// original interpretation is `v`.
pub fn glue_rule(v: Rat, omega: Rat) -> Rat {
    glue_value(v, omega)
}

/// True iff no strictly decreasing family of values arising while
/// evaluating `f` converges to ω.
pub fn omega_isolated_from_above(i: &Interpretation, f: &Formula, omega: Rat) -> Result<bool, EvalError> {
    let (_, trace) = eval_traced(f, i)?;
    let mut families: Vec<&SeqValue> = i.seqs.values().collect();
    families.extend(trace.entries.iter().filter_map(|e| e.family.as_ref()));
    Ok(!families.iter().any(|s| s.beta > Rat::zero() && s.alpha == omega))
}

/// Membership violations of the atomic values against a truth set.
pub fn validate(i: &Interpretation, v: &GoedelSetDescriptor) -> Vec<String> {
    let mut out = Vec::new();
    if v.kind == SetKind::Abstract {
        out.push(format!("membership in the abstract set '{}' cannot be checked", v.name));
        return out;
    }
    for (p, table) in &i.atoms {
        for (args, val) in table {
            if v.contains(val) != Some(true) {
                out.push(format!("{} = {} is not in {}", i.application(p, args), format_rat(val), v.name));
            }
        }
    }
    for (p, s) in &i.seqs {
        for (n, val) in &s.overrides {
            if v.contains(val) != Some(true) {
                out.push(format!("{p}({n}) = {} is not in {}", format_rat(val), v.name));
            }
        }
        if !closed_form_in(s, v) {
            out.push(format!("{p} = {} leaves {}", s.closed_form_text(), v.name));
        }
    }
    out
}

/// Whether every closed-form value (and the limit) of `s` lies in `v`.
pub fn closed_form_in(s: &SeqValue, v: &GoedelSetDescriptor) -> bool {
    if s.beta.is_zero() {
        return v.contains(&s.alpha) == Some(true);
    }
    if !s.in_unit_interval() {
        return false;
    }
    // values alpha ± 1/k with (n+γ)/|β| a positive integer for every n
    let harmonic = || {
        let inv = Rat::one() / s.beta.abs();
        inv.is_integer() && (s.gamma * inv).is_integer()
    };
    match v.kind {
        SetKind::UnitInterval => true,
        SetKind::VDown => s.alpha.is_zero() && s.beta > Rat::zero() && harmonic(),
        SetKind::VUp => s.alpha.is_one() && s.beta < Rat::zero() && harmonic(),
        SetKind::Finite(_) | SetKind::Abstract => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat;

    #[test]
    fn glue_atomic_values() {
        let mut i = Interpretation::finite(1);
        i.set_prop("P", rat(4, 5)).set_prop("Q", rat(3, 10));
        let g = glue(&i, rat(1, 2)).unwrap();
        assert_eq!(g.atoms["P"][&vec![]], rat(1, 1));
        assert_eq!(g.atoms["Q"][&vec![]], rat(3, 10));
        assert_eq!(glue(&g, rat(1, 2)).unwrap(), g);
        assert!(glue(&i, rat(1, 1)).is_err());
    }

    #[test]
    fn delta_breaks_the_glue_identity() {
        let mut i = Interpretation::finite(1);
        i.set_prop("P", rat(1, 2));
        let f = crate::formula::parse("D P").unwrap();
        let g = glue(&i, rat(1, 4)).unwrap();
        assert_eq!(crate::eval::eval(&f, &i).unwrap(), rat(0, 1));
        assert_eq!(crate::eval::eval(&f, &g).unwrap(), rat(1, 1));
        assert_eq!(glue_rule(rat(0, 1), rat(1, 4)), rat(0, 1));
    }

    #[test]
    fn glue_sequence_unchanged_below_omega() {
        let mut i = Interpretation::nat();
        i.set_seq("A", SeqValue::new(rat(0, 1), rat(1, 1), rat(2, 1)));
        assert_eq!(glue(&i, rat(1, 2)).unwrap(), i);
    }

    #[test]
    fn parse_round_trip() {
        let text = "domain finite 2 a b\ntruthset G3\natom P(a,b) = 1/2\natom B = 1\nfunc f(a) = b\nfunc c() = a\nassign x = b\n";
        let i = Interpretation::parse_text(text).unwrap();
        assert_eq!(i.atoms["P"][&vec![0, 1]], rat(1, 2));
        assert_eq!(i.funcs["c"][&vec![]], 0);
        assert_eq!(i.assign["x"], 1);
        assert_eq!(Interpretation::parse_text(&i.to_text()).unwrap(), i);
        let nat = "domain nat\nseq A = 0 + 1/(n+2)\nseq A override 0 = 1\natom X = 1/2\n";
        let j = Interpretation::parse_text(nat).unwrap();
        assert_eq!(j.seqs["A"].value(0), rat(1, 1));
        assert_eq!(j.seqs["A"].value(1), rat(1, 3));
        assert_eq!(Interpretation::parse_text(&j.to_text()).unwrap(), j);
    }

    #[test]
    fn parse_errors() {
        assert!(Interpretation::parse_text("atom P = 1").is_err());
        assert!(Interpretation::parse_text("domain finite 1\natom P = 0.5").is_err());
        assert!(Interpretation::parse_text("domain finite 1\natom P(z) = 1").is_err());
        assert!(Interpretation::parse_text("domain nat\nfunc f(0) = 1").is_err());
        assert!(Interpretation::parse_text("domain nat\nseq A = 1 + 1/(n+1)").is_err());
        match Interpretation::parse_text("domain finite 1\n\natom P = 3/2") {
            Err(InterpError::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation() {
        let g3 = GoedelSetDescriptor::finite(vec![rat(0, 1), rat(1, 2), rat(1, 1)]).unwrap();
        let mut i = Interpretation::finite(1);
        i.set_prop("P", rat(0, 1)).set_prop("Q", rat(1, 2)).set_prop("R", rat(1, 1));
        assert!(validate(&i, &g3).is_empty());
        i.set_prop("S", rat(1, 3));
        assert_eq!(validate(&i, &g3).len(), 1);
        let mut n = Interpretation::nat();
        n.set_seq("A", SeqValue::new(rat(0, 1), rat(1, 1), rat(2, 1)));
        assert!(validate(&n, &GoedelSetDescriptor::vdown()).is_empty());
        assert_eq!(validate(&n, &GoedelSetDescriptor::vup()).len(), 1);
        assert!(validate(&n, &GoedelSetDescriptor::unit_interval()).is_empty());
    }
}
