//! Quantifier extraction, innermost-leftmost first.

use super::{ShiftRule, TransformError, Unsupported};
use crate::formula::{rectify, split_prefix, with_prefix, Formula, Quantifier};
use crate::truthset::{Classification, SetClass};

/// One rule application; `position` is the path of child indices from the
/// root of the rectified input to the connective the quantifier crossed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: ShiftRule,
    pub position: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrenexResult {
    pub prenex: Formula,
    pub trace: Vec<TraceStep>,
    /// How the equivalence is backed for the class used.
    pub guarantee: &'static str,
}

impl PrenexResult {
    pub fn render_trace(&self) -> String {
        self.trace.iter().map(|s| format!("{} at {}\n", s.rule, s.position)).collect()
    }
}

struct Engine<'a> {
    allow: &'a dyn Fn(ShiftRule) -> Result<(), Unsupported>,
    trace: Vec<TraceStep>,
}

fn position(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl Engine<'_> {
    fn step(&mut self, rule: ShiftRule, path: &[usize]) -> Result<(), TransformError> {
        (self.allow)(rule).map_err(TransformError::Unsupported)?;
        self.trace.push(TraceStep { rule, position: position(path) });
        Ok(())
    }

    fn child(&mut self, f: &Formula, path: &mut Vec<usize>, i: usize) -> Result<Formula, TransformError> {
        path.push(i);
        let r = self.go(f, path);
        path.pop();
        r
    }

    fn go(&mut self, f: &Formula, path: &mut Vec<usize>) -> Result<Formula, TransformError> {
        Ok(match f {
            Formula::Bottom | Formula::Top | Formula::Atom(..) => f.clone(),
            Formula::Forall(x, a) => Formula::forall(x, self.child(a, path, 0)?),
            Formula::Exists(x, a) => Formula::exists(x, self.child(a, path, 0)?),
            Formula::Delta(a) => {
                let a = self.child(a, path, 0)?;
                let (prefix, m) = split_prefix(&a);
                for (q, _) in &prefix {
                    let rule = match q {
                        Quantifier::Forall => ShiftRule::DeltaForall,
                        Quantifier::Exists => ShiftRule::DeltaExists,
                    };
                    self.step(rule, path)?;
                }
                with_prefix(&prefix, Formula::delta(m.clone()))
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let a = self.child(a, path, 0)?;
                let b = self.child(b, path, 1)?;
                let (pa, ma) = split_prefix(&a);
                let (pb, mb) = split_prefix(&b);
                let mut prefix = Vec::new();
                for (q, v) in pa {
                    let (rule, q2) = match (f, q) {
                        (Formula::And(..), Quantifier::Forall) => (ShiftRule::ForallAnd, q),
                        (Formula::And(..), Quantifier::Exists) => (ShiftRule::ExistsAnd, q),
                        (Formula::Or(..), Quantifier::Forall) => (ShiftRule::ForallOr, q),
                        (Formula::Or(..), Quantifier::Exists) => (ShiftRule::ExistsOr, q),
                        (_, Quantifier::Forall) => (ShiftRule::ForallAnte, Quantifier::Exists),
                        (_, Quantifier::Exists) => (ShiftRule::ExistsAnte, Quantifier::Forall),
                    };
                    self.step(rule, path)?;
                    prefix.push((q2, v));
                }
                for (q, v) in pb {
                    let rule = match (f, q) {
                        (Formula::And(..), Quantifier::Forall) => ShiftRule::ForallAnd,
                        (Formula::And(..), Quantifier::Exists) => ShiftRule::ExistsAnd,
                        (Formula::Or(..), Quantifier::Forall) => ShiftRule::ForallOr,
                        (Formula::Or(..), Quantifier::Exists) => ShiftRule::ExistsOr,
                        (_, Quantifier::Forall) => ShiftRule::ForallCons,
                        (_, Quantifier::Exists) => ShiftRule::ExistsCons,
                    };
                    self.step(rule, path)?;
                    prefix.push((q, v));
                }
                let (ma, mb) = (ma.clone(), mb.clone());
                let m = match f {
                    Formula::And(..) => Formula::and(ma, mb),
                    Formula::Or(..) => Formula::or(ma, mb),
                    _ => Formula::implies(ma, mb),
                };
                with_prefix(&prefix, m)
            }
        })
    }
}

fn run(f: &Formula, allow: &dyn Fn(ShiftRule) -> Result<(), Unsupported>) -> Result<(Formula, Vec<TraceStep>), TransformError> {
    let mut e = Engine { allow, trace: Vec::new() };
    let p = e.go(&rectify(f), &mut Vec::new())?;
    Ok((p, e.trace))
}

/// Rules usable in the class.
pub fn shift_rules(c: &Classification) -> Vec<ShiftRule> {
    ShiftRule::ALL.into_iter().filter(|r| r.family().is_none_or(|fam| c.has_shift(fam))).collect()
}

/// A logically equivalent prenex form, using only shifts valid in the class.
pub fn prenexify(f: &Formula, c: &Classification) -> Result<PrenexResult, TransformError> {
    let has_delta = f.has_delta();
    if !c.admits_logical_prenex(has_delta) {
        let (set, class) = (c.set_name.clone(), c.class);
        return Err(TransformError::Unsupported(if has_delta && c.logical_prenex {
            Unsupported::DeltaShiftUnavailable { set, class }
        } else {
            Unsupported::NoLogicalPrenex { set, class }
        }));
    }
    let allow = |r: ShiftRule| match r.family() {
        Some(fam) if !c.has_shift(fam) => Err(Unsupported::RuleUnavailable { set: c.set_name.clone(), rule: r }),
        _ => Ok(()),
    };
    let (prenex, trace) = run(f, &allow)?;
    let guarantee = match c.class {
        SetClass::Finite => "equivalent in the class; checked exhaustively on small domains",
        _ => "equivalent by the class's shift rules; tested, not proven",
    };
    Ok(PrenexResult { prenex, trace, guarantee })
}

/// A prenex form with the same >0-valid instances: the logical one where it
/// exists, otherwise the double-negated-atom form (0 isolated).
pub fn prenexify_pos_valid(f: &Formula, c: &Classification) -> Result<PrenexResult, TransformError> {
    let has_delta = f.has_delta();
    if c.admits_logical_prenex(has_delta) {
        return prenexify(f, c);
    }
    let ok = if has_delta { c.pos_valid_prenex_with_delta } else { c.pos_valid_prenex };
    if !ok {
        return Err(TransformError::Unsupported(Unsupported::NoPosValidPrenex { set: c.set_name.clone(), class: c.class }));
    }
    let mut r = validity_prenex_re(f)?;
    r.guarantee = ">0-validity equivalent: double-negated atoms take only the values 0 and 1";
    Ok(r)
}

fn simplify_triple_negation(f: &Formula) -> Formula {
    let rebuilt = match f {
        Formula::Bottom | Formula::Top | Formula::Atom(..) => return f.clone(),
        Formula::And(a, b) => Formula::and(simplify_triple_negation(a), simplify_triple_negation(b)),
        Formula::Or(a, b) => Formula::or(simplify_triple_negation(a), simplify_triple_negation(b)),
        Formula::Implies(a, b) => Formula::implies(simplify_triple_negation(a), simplify_triple_negation(b)),
        Formula::Delta(a) => Formula::delta(simplify_triple_negation(a)),
        Formula::Forall(x, a) => Formula::forall(x, simplify_triple_negation(a)),
        Formula::Exists(x, a) => Formula::exists(x, simplify_triple_negation(a)),
    };
    if let Formula::Implies(a, bot) = &rebuilt {
        if **bot == Formula::Bottom {
            if let Formula::Implies(b, bot2) = &**a {
                if **bot2 == Formula::Bottom {
                    if let Formula::Implies(inner, bot3) = &**b {
                        if **bot3 == Formula::Bottom {
                            return Formula::not((**inner).clone());
                        }
                    }
                }
            }
        }
    }
    rebuilt
}

/// Double-negates every atom, then extracts quantifiers with the full
/// classical shift table and rewrites `¬¬¬A` to `¬A`.
pub fn validity_prenex_re(f: &Formula) -> Result<PrenexResult, TransformError> {
    if f.has_delta() {
        return Err(TransformError::DeltaPresent);
    }
    let atomized = f.map_atoms(&|a| Formula::not(Formula::not(a.clone())));
    let (p, trace) = run(&atomized, &|_| Ok(()))?;
    Ok(PrenexResult { prenex: simplify_triple_negation(&p), trace, guarantee: "syntactic; classical shifts on double-negated atoms" })
}
