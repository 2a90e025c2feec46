//! Named fixture corpus with expected statuses per truth-value set, and the
//! suite running it.

use std::fmt;

use num_traits::One;

use super::{check_sat, find_countermodel, SatMode, SearchSpace, Verdict};
use crate::chains::{first_refuting_chain, Chain};
use crate::eval::eval;
use crate::formula::{parse, Formula};
use crate::interp::{glue, validate, Interpretation};
use crate::transform::ShiftRule;
use crate::truthset::{GoedelSetDescriptor, SetKind};
use crate::value::{format_rat, rat, Rat};

/// Largest domain tried by the suite's finite phase.
const SUITE_MAX_DOMAIN: usize = 3;

/// Which sets a fixture is valid (or satisfiable) in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    ValidEverywhere,
    /// Valid in finite sets and the upward set only.
    FiniteAndUp,
    /// Valid in finite sets and the downward set only.
    FiniteAndDown,
    /// Valid everywhere except the unit interval.
    AllButUnit,
    /// Valid exactly in finite sets with at most `n` values.
    FiniteUpTo(usize),
    /// 1-satisfiable exactly in the downward set and the unit interval; classically unsatisfiable.
    SatDownAndUnit,
    /// 1-satisfiable in every set with an intermediate value; classically unsatisfiable.
    SatWithMiddle,
}

impl Profile {
    fn is_sat(self) -> bool {
        matches!(self, Profile::SatDownAndUnit | Profile::SatWithMiddle)
    }

    /// `None` for abstract sets.
    pub fn expect(self, kind: &SetKind) -> Option<Expect> {
        let finite = match kind {
            SetKind::Finite(v) => Some(v.len()),
            SetKind::Abstract => return None,
            _ => None,
        };
        let up = matches!(kind, SetKind::VUp);
        let down = matches!(kind, SetKind::VDown);
        let unit = matches!(kind, SetKind::UnitInterval);
        let valid = |b: bool| if b { Expect::Valid } else { Expect::Invalid };
        Some(match self {
            Profile::ValidEverywhere => Expect::Valid,
            Profile::FiniteAndUp => valid(finite.is_some() || up),
            Profile::FiniteAndDown => valid(finite.is_some() || down),
            Profile::AllButUnit => valid(!unit),
            Profile::FiniteUpTo(n) => valid(finite.is_some_and(|m| m <= n)),
            Profile::SatDownAndUnit => Expect::Sat { one_sat: down || unit },
            Profile::SatWithMiddle => Expect::Sat { one_sat: finite != Some(2) },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Valid,
    Invalid,
    /// Never classically satisfiable.
    Sat { one_sat: bool },
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Valid => f.write_str("valid"),
            Expect::Invalid => f.write_str("invalid"),
            Expect::Sat { one_sat: true } => f.write_str("1-sat,classically-unsat"),
            Expect::Sat { one_sat: false } => f.write_str("not-1-sat,classically-unsat"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub formula: Formula,
    pub profile: Profile,
    /// Short label of what the fixture witnesses.
    pub tag: &'static str,
}

fn fx(name: &str, text: &str, profile: Profile, tag: &'static str) -> Fixture {
    let formula = parse(text).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    Fixture { name: name.to_string(), formula, profile, tag }
}

/// `(⊤ ⊃ p1) ∨ (p1 ⊃ p2) ∨ … ∨ (p(n-1) ⊃ ⊥)`, valid over at most `n` values.
pub fn fin(n: usize) -> Formula {
    assert!(n >= 2);
    let mut chain = vec![Formula::Top];
    chain.extend((1..n).map(|i| Formula::prop(&format!("p{i}"))));
    chain.push(Formula::Bottom);
    Formula::disjunction(chain.windows(2).map(|w| Formula::implies(w[0].clone(), w[1].clone())).collect::<Vec<_>>())
}

/// The corpus in report order.
pub fn fixtures() -> Vec<Fixture> {
    use Profile::*;
    let mut out = vec![
        fx("I1", "(A -> B) -> ((B -> C) -> (A -> C))", ValidEverywhere, "intuitionistic"),
        fx("I2", "((A | A) -> A) & (A -> A & A)", ValidEverywhere, "intuitionistic"),
        fx("I3", "(A -> A | B) & (A & B -> A)", ValidEverywhere, "intuitionistic"),
        fx("I4", "((A | B) -> (B | A)) & ((A & B) -> (B & A))", ValidEverywhere, "intuitionistic"),
        fx("I5", "(A -> B) -> ((C | A) -> (C | B))", ValidEverywhere, "intuitionistic"),
        fx("I6", "((A & B) -> C) -> (A -> (B -> C))", ValidEverywhere, "intuitionistic"),
        fx("I7", "(A -> (B -> C)) -> ((A & B) -> C)", ValidEverywhere, "intuitionistic"),
        fx("I8", "bot -> A", ValidEverywhere, "intuitionistic"),
        fx("I9", "(A x. P(x)) -> P(c())", ValidEverywhere, "intuitionistic"),
        fx("I10", "P(c()) -> E x. P(x)", ValidEverywhere, "intuitionistic"),
        fx("D1", "D A | ~D A", ValidEverywhere, "delta"),
        fx("D2", "D (A | B) -> (D A | D B)", ValidEverywhere, "delta"),
        fx("D3", "D A -> A", ValidEverywhere, "delta"),
        fx("D4", "D A -> D D A", ValidEverywhere, "delta"),
        fx("D5", "D (A -> B) -> (D A -> D B)", ValidEverywhere, "delta"),
        fx("QS", "(A x. (B | P(x))) -> (B | A x. P(x))", ValidEverywhere, "quantifier-shift"),
        fx("LIN", "(A -> B) | (B -> A)", ValidEverywhere, "linearity"),
        fx("ISO0", "(A x. ~~P(x)) -> ~~A x. P(x)", FiniteAndUp, "isolation-0"),
        fx("ISO0'", "~(A x. P(x)) -> E x. ~P(x)", FiniteAndUp, "isolation-0"),
        fx("ISO1", "D (E x. P(x)) -> E x. D P(x)", FiniteAndDown, "isolation-1"),
        fx("ISO1'", "(A x. ~D P(x)) -> ~D E x. P(x)", FiniteAndDown, "isolation-1"),
    ];
    for n in 2..=6 {
        out.push(Fixture { name: format!("Fin({n})"), formula: fin(n), profile: FiniteUpTo(n), tag: "finite-values" });
    }
    out.extend([
        fx("S1", "(A x. (P(x) | B)) -> ((A x. P(x)) | B)", ValidEverywhere, "shift"),
        fx("S2", "(B -> E x. P(x)) -> E x. (B -> P(x))", AllButUnit, "shift"),
        fx("S3", "((A x. P(x)) -> B) -> E x. (P(x) -> B)", FiniteAndUp, "shift"),
        Fixture { name: "D-forall".into(), formula: rename_a(ShiftRule::DeltaForall.instance()), profile: ValidEverywhere, tag: "delta-shift" },
        Fixture { name: "D-exists".into(), formula: rename_a(ShiftRule::DeltaExists.instance()), profile: FiniteAndDown, tag: "delta-shift" },
        fx("C-up", "E x. (P(x) -> A y. P(y))", FiniteAndUp, "infimum-attained"),
        fx("C-down", "E x. ((E y. P(y)) -> P(x))", AllButUnit, "supremum-attained"),
        fx("F", "~(A x. P(x)) & A x. ~~P(x)", SatDownAndUnit, "one-sat-not-classical"),
        fx("gadget-sup-less", "(A x. (X < P(x))) -> (X < E x. P(x))", AllButUnit, "gadget"),
        fx("gadget-delta-sup", "(A x. ~D P(x)) -> ~D E x. P(x)", FiniteAndDown, "gadget"),
        fx("gadget-delta-inf", "(A x. D (P(x) < X)) -> D ((A x. P(x)) < X)", FiniteAndUp, "gadget"),
        fx("gadget-nn-delta", "~~A & ~D A", SatWithMiddle, "one-sat-not-classical"),
    ]);
    out
}

/// Shift instances use a unary `A`; the corpus writes unary predicates as `P`.
fn rename_a(f: Formula) -> Formula {
    f.map_atoms(&|a| match a {
        Formula::Atom(p, args) if p == "A" => Formula::Atom("P".to_string(), args.clone()),
        other => other.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureResult {
    pub fixture: String,
    pub set: String,
    pub expected: String,
    pub got: String,
    /// `chains`, `search`, `sat`, `glue` or `none`.
    pub method: &'static str,
    pub tag: &'static str,
    pub status: Status,
    /// The refuting or satisfying interpretation, when one was found.
    pub model: Option<(Interpretation, Rat)>,
}

impl FixtureResult {
    pub fn line(&self) -> String {
        let value = self.model.as_ref().map(|(_, v)| format!(" value={}", format_rat(v))).unwrap_or_default();
        format!(
            "fixture={} class={} expected={} got={} method={} tag={}{} result={}",
            self.fixture, self.set, self.expected, self.got, self.method, self.tag, value, self.status
        )
    }
}

/// One line per result.
pub fn render_report(results: &[FixtureResult]) -> String {
    results.iter().map(|r| r.line() + "\n").collect()
}

/// Values assigned to the blocks of a chain inside the set.
fn embed_chain(c: &Chain, kind: &SetKind) -> Option<Interpretation> {
    let top = c.blocks().len() - 1;
    let inner = top.saturating_sub(1) as i64;
    let value = |j: usize| -> Option<Rat> {
        if j == 0 {
            return Some(rat(0, 1));
        }
        if j == top {
            return Some(Rat::one());
        }
        let j = j as i64;
        Some(match kind {
            SetKind::Finite(v) => *v.get(j as usize).filter(|_| top < v.len())?,
            SetKind::VUp => rat(j, j + 1),
            SetKind::VDown => rat(1, inner + 2 - j),
            SetKind::UnitInterval => rat(j, top as i64),
            SetKind::Abstract => return None,
        })
    };
    let mut i = Interpretation::finite(1);
    for (j, block) in c.blocks().iter().enumerate() {
        let v = value(j)?;
        for a in block {
            i.set_prop(a, v);
        }
    }
    Some(i)
}

fn levels_of(kind: &SetKind) -> Option<usize> {
    match kind {
        SetKind::Finite(v) => Some(v.len()),
        _ => None,
    }
}

fn verdict_got(v: &Verdict) -> String {
    match v {
        Verdict::Valid(_) => "valid".into(),
        Verdict::Countermodel(..) => "invalid".into(),
        Verdict::Witness(..) => "1-sat".into(),
        Verdict::NotFound(b) if b.capped => "capped".into(),
        Verdict::NotFound(b) if b.inconclusive > 0 => "inconclusive".into(),
        Verdict::NotFound(_) => "not-found".into(),
    }
}

/// A countermodel stays one over the unit interval.
fn survives_in_unit_interval(i: &Interpretation, f: &Formula, value: Rat) -> bool {
    let mut wide = i.clone();
    wide.truth_set = Some(GoedelSetDescriptor::unit_interval());
    validate(&wide, &GoedelSetDescriptor::unit_interval()).is_empty() && eval(f, &wide).ok() == Some(value)
}

fn run_one(fx: &Fixture, d: &GoedelSetDescriptor) -> FixtureResult {
    let mut r = FixtureResult {
        fixture: fx.name.clone(),
        set: d.name.clone(),
        expected: String::new(),
        got: String::new(),
        method: "none",
        tag: fx.tag,
        status: Status::Skip,
        model: None,
    };
    let Some(expect) = fx.profile.expect(&d.kind) else {
        r.expected = "n/a".into();
        r.got = "skipped".into();
        return r;
    };
    r.expected = expect.to_string();
    let f = &fx.formula;
    if fx.profile.is_sat() {
        r.method = "sat";
        let space = SearchSpace::for_set(d, SUITE_MAX_DOMAIN, true).expect("concrete set");
        let one = check_sat(f, SatMode::OneSat, &space).expect("fixture evaluates");
        let classical = check_sat(f, SatMode::ClassicalSat, &SearchSpace::classical(4)).expect("fixture evaluates");
        let one_got = match &one {
            Verdict::Witness(..) => "1-sat".to_string(),
            Verdict::NotFound(b) if !b.capped && b.inconclusive == 0 => "not-1-sat".to_string(),
            other => verdict_got(other),
        };
        let cl_got = match &classical {
            Verdict::Witness(..) => "classically-sat".to_string(),
            Verdict::NotFound(b) if !b.capped => "classically-unsat".to_string(),
            other => verdict_got(other),
        };
        r.got = format!("{one_got},{cl_got}");
        if let Verdict::Witness(i, v) = one {
            r.model = Some((i, v));
        }
    } else if f.is_propositional() {
        r.method = "chains";
        let refuting = first_refuting_chain(f, levels_of(&d.kind)).expect("propositional");
        r.got = if refuting.is_some() { "invalid" } else { "valid" }.into();
        if let Some(c) = refuting {
            let i = embed_chain(&c, &d.kind).expect("chain fits the set");
            let v = eval(f, &i).expect("propositional");
            r.model = Some((i, v));
        }
    } else {
        r.method = "search";
        let space = SearchSpace::for_set(d, SUITE_MAX_DOMAIN, true).expect("concrete set");
        let v = find_countermodel(f, &space).expect("fixture evaluates");
        r.got = verdict_got(&v);
        if let Verdict::Countermodel(i, val) = v {
            r.model = Some((i, val));
        }
    }
    // countermodels must be genuine, lie in the set and survive in [0,1]
    let model_ok = match &r.model {
        Some((i, v)) if expect == Expect::Invalid => {
            *v < Rat::one()
                && eval(&f.universal_closure(), i).ok() == Some(*v)
                && validate(i, d).is_empty()
                && survives_in_unit_interval(i, &f.universal_closure(), *v)
        }
        Some((i, v)) => v.is_one() && validate(i, d).is_empty(),
        None => true,
    };
    r.status = if model_ok && r.got == r.expected { Status::Pass } else { Status::Fail };
    r
}

/// Gluing a finite countermodel of a fixture free of ∀ and Δ at its value
/// gives a countermodel over finitely many values. Δ is excluded since
/// gluing can raise `ΔA` from 0 to 1.
fn glue_check(fx: &Fixture, up: &GoedelSetDescriptor) -> Option<FixtureResult> {
    if fx.profile.is_sat() || fx.formula.has_forall() || fx.formula.has_delta() || fx.profile.expect(&up.kind) != Some(Expect::Invalid) {
        return None;
    }
    let space = SearchSpace::for_set(up, 1, false).expect("concrete set");
    let Ok(Verdict::Countermodel(i, v)) = find_countermodel(&fx.formula, &space) else {
        return Some(FixtureResult {
            fixture: fx.name.clone(),
            set: up.name.clone(),
            expected: "glued-countermodel".into(),
            got: "no-finite-countermodel".into(),
            method: "glue",
            tag: fx.tag,
            status: Status::Fail,
            model: None,
        });
    };
    let g = glue(&i, v).expect("value below 1");
    let gv = eval(&fx.formula, &g).ok();
    let mut finite: Vec<Rat> = g.atomic_values();
    finite.extend([rat(0, 1), Rat::one()]);
    let k = (Rat::one() / (Rat::one() - v)).to_integer() as usize;
    let target = GoedelSetDescriptor::vm(k + 1);
    let ok = gv == Some(v) && finite.iter().all(|x| *x <= v || x.is_one()) && validate(&g, &target).is_empty();
    Some(FixtureResult {
        fixture: fx.name.clone(),
        set: target.name.clone(),
        expected: "glued-countermodel".into(),
        got: if ok { "glued-countermodel".into() } else { "glue-mismatch".into() },
        method: "glue",
        tag: fx.tag,
        status: if ok { Status::Pass } else { Status::Fail },
        model: Some((g, v)),
    })
}

/// Every fixture against every set, followed by glue checks for the upward set.
pub fn run_fixture_suite(sets: &[GoedelSetDescriptor]) -> Vec<FixtureResult> {
    let corpus = fixtures();
    let mut out = Vec::new();
    for d in sets {
        for fx in &corpus {
            out.push(run_one(fx, d));
        }
        if matches!(d.kind, SetKind::VUp) {
            out.extend(corpus.iter().filter_map(|fx| glue_check(fx, d)));
        }
    }
    out
}
