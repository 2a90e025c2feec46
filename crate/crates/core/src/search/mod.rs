//! Bounded countermodel and witness search over finite interpretations and
//! over ℕ-interpretations built from sequence templates.

mod fixtures;

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::eval::{classical_eval, eval, unflatten, Compiled, EvalError, Tables};
use crate::formula::Formula;
use crate::interp::{closed_form_in, Interpretation};
use crate::seq::SeqValue;
use crate::truthset::{GoedelSetDescriptor, SetKind};
use crate::value::{format_rat, rat, Rat};

pub use fixtures::{fin, fixtures, render_report, run_fixture_suite, Expect, Fixture, FixtureResult, Profile, Status};

/// Environment variable bounding the number of enumerated interpretations.
pub const CAP_VAR: &str = "WORKBENCH_MAX_INTERPS";
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the set '{0}' is abstract; searching needs concrete truth values")]
    AbstractSet(String),
    #[error("truth values must be sorted, distinct, within [0,1] and contain 0 and 1")]
    BadValues,
    #[error("at most 255 truth values are supported")]
    TooManyValues,
    #[error("domain bounds must satisfy 1 <= min <= max")]
    BadDomains,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The cap from `WORKBENCH_MAX_INTERPS`, or the default.
pub fn cap_from_env() -> u64 {
    std::env::var(CAP_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    /// Name used in reports.
    pub set_name: String,
    pub truth_values: Vec<Rat>,
    pub min_domain: usize,
    pub max_domain: usize,
    /// Families for unary predicates over ℕ; tried after the finite domains.
    pub templates: Vec<SeqValue>,
    pub cap: u64,
    /// Attached to reported interpretations.
    pub descriptor: Option<GoedelSetDescriptor>,
}

/// Finite truncations used for the infinite sets.
pub fn truncation(d: &GoedelSetDescriptor) -> Option<Vec<Rat>> {
    Some(match &d.kind {
        SetKind::Finite(v) => v.clone(),
        SetKind::VUp => vec![rat(0, 1), rat(1, 2), rat(2, 3), rat(3, 4), rat(4, 5), rat(5, 6), rat(1, 1)],
        SetKind::VDown => vec![rat(0, 1), rat(1, 6), rat(1, 5), rat(1, 4), rat(1, 3), rat(1, 2), rat(1, 1)],
        SetKind::UnitInterval => vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)],
        SetKind::Abstract => return None,
    })
}

/// Sequence templates lying in the set: `1/(n+γ)` and `1 - 1/(n+γ)` for
/// γ = 2..5, `1/2 ∓ 1/(n+4)`, then constants from `values`.
pub fn default_templates(d: &GoedelSetDescriptor, values: &[Rat]) -> Vec<SeqValue> {
    let mut out = Vec::new();
    if matches!(d.kind, SetKind::Finite(_) | SetKind::Abstract) {
        return out;
    }
    for g in 2..=5 {
        out.push(SeqValue::new(rat(0, 1), rat(1, 1), rat(g, 1)));
    }
    for g in 2..=5 {
        out.push(SeqValue::new(rat(1, 1), rat(-1, 1), rat(g, 1)));
    }
    out.push(SeqValue::new(rat(1, 2), rat(-1, 1), rat(4, 1)));
    out.push(SeqValue::new(rat(1, 2), rat(1, 1), rat(4, 1)));
    out.retain(|s| closed_form_in(s, d));
    out.extend(values.iter().map(|v| SeqValue::constant(*v)));
    out
}

impl SearchSpace {
    pub fn new(set_name: &str, truth_values: Vec<Rat>, max_domain: usize) -> Result<SearchSpace, SearchError> {
        let ok = truth_values.first() == Some(&Rat::zero())
            && truth_values.last() == Some(&Rat::one())
            && truth_values.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(SearchError::BadValues);
        }
        if truth_values.len() > 255 {
            return Err(SearchError::TooManyValues);
        }
        if max_domain == 0 {
            return Err(SearchError::BadDomains);
        }
        Ok(SearchSpace {
            set_name: set_name.to_string(),
            truth_values,
            min_domain: 1,
            max_domain,
            templates: Vec::new(),
            cap: cap_from_env(),
            descriptor: None,
        })
    }

    /// The set's values (or truncation), domains `1..=max_domain`, and its
    /// templates when `templates` is set.
    pub fn for_set(d: &GoedelSetDescriptor, max_domain: usize, templates: bool) -> Result<SearchSpace, SearchError> {
        let values = truncation(d).ok_or_else(|| SearchError::AbstractSet(d.name.clone()))?;
        let mut s = SearchSpace::new(&d.name, values, max_domain)?;
        if templates {
            s.templates = default_templates(d, &s.truth_values);
        }
        s.descriptor = Some(d.clone());
        Ok(s)
    }

    /// Two values and no templates.
    pub fn classical(max_domain: usize) -> SearchSpace {
        let mut s = SearchSpace::new("classical", vec![Rat::zero(), Rat::one()], max_domain).expect("valid");
        s.descriptor = None;
        s
    }

    pub fn with_domains(mut self, min: usize, max: usize) -> Result<SearchSpace, SearchError> {
        if min == 0 || min > max {
            return Err(SearchError::BadDomains);
        }
        self.min_domain = min;
        self.max_domain = max;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: u64) -> SearchSpace {
        self.cap = cap;
        self
    }

    pub fn with_templates(mut self, t: Vec<SeqValue>) -> SearchSpace {
        self.templates = t;
        self
    }
}

/// What was searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub set_name: String,
    pub values: usize,
    pub domains: (usize, usize),
    pub templates: usize,
    /// Interpretations evaluated.
    pub interpretations: u64,
    /// ℕ-interpretations the evaluator could not decide.
    pub inconclusive: u64,
    /// Set when a phase was skipped because it would exceed the cap.
    pub capped: bool,
    /// Set when templates were requested but the formula is not monadic.
    pub templates_skipped: bool,
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "set={} values={} domains={}..{} templates={} interpretations={} inconclusive={}{}{}",
            self.set_name,
            self.values,
            self.domains.0,
            self.domains.1,
            self.templates,
            self.interpretations,
            self.inconclusive,
            if self.capped { " capped" } else { "" },
            if self.templates_skipped { " templates-skipped" } else { "" },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No countermodel within the bounds; never a claim of unbounded validity.
    Valid(Bounds),
    Countermodel(Interpretation, Rat),
    Witness(Interpretation, Rat),
    NotFound(Bounds),
}

impl Verdict {
    pub fn is_capped(&self) -> bool {
        matches!(self, Verdict::NotFound(b) if b.capped)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Valid(_) => "valid-bounded",
            Verdict::Countermodel(..) => "countermodel",
            Verdict::Witness(..) => "witness",
            Verdict::NotFound(b) if b.capped => "not-found-capped",
            Verdict::NotFound(_) => "not-found",
        }
    }

    pub fn interpretation(&self) -> Option<&Interpretation> {
        match self {
            Verdict::Countermodel(i, _) | Verdict::Witness(i, _) => Some(i),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Verdict::Valid(b) | Verdict::NotFound(b) => format!("verdict={}\nbounds {b}\n", self.label()),
            Verdict::Countermodel(i, v) | Verdict::Witness(i, v) => {
                format!("verdict={} value={}\n{}", self.label(), format_rat(v), i.to_text())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatMode {
    /// Value exactly 1.
    OneSat,
    /// Value above 0.
    PosSat,
    /// Classical truth with values in {0,1}.
    ClassicalSat,
}

#[derive(Clone, Copy)]
enum Goal {
    Refute,
    One,
    Positive,
}

impl Goal {
    fn hit_index(self, v: u8, top: u8) -> bool {
        match self {
            Goal::Refute => v != top,
            Goal::One => v == top,
            Goal::Positive => v != 0,
        }
    }

    fn hit(self, v: Rat) -> bool {
        match self {
            Goal::Refute => !v.is_one(),
            Goal::One => v.is_one(),
            Goal::Positive => !v.is_zero(),
        }
    }
}

struct Layout {
    radices: Vec<u64>,
    total: Option<u64>,
}

fn layout(c: &Compiled, k: usize, values: usize) -> Layout {
    let mut radices = Vec::new();
    for (_, arity) in &c.preds {
        radices.extend(std::iter::repeat_n(values as u64, k.pow(*arity as u32)));
    }
    for (_, arity) in &c.funcs {
        radices.extend(std::iter::repeat_n(k as u64, k.pow(*arity as u32)));
    }
    let total = radices.iter().try_fold(1u64, |acc, r| acc.checked_mul(*r));
    Layout { radices, total }
}

/// Digits of `idx` in the layout's mixed radix, first cell most significant.
fn digits(mut idx: u64, radices: &[u64], out: &mut [u64]) {
    for (slot, r) in out.iter_mut().zip(radices).rev() {
        *slot = idx % r;
        idx /= r;
    }
}

fn fill_tables(c: &Compiled, k: usize, digits: &[u64], preds: &mut [Vec<u8>], funcs: &mut [Vec<u32>]) {
    let mut d = digits.iter();
    for (i, (_, arity)) in c.preds.iter().enumerate() {
        preds[i].clear();
        preds[i].extend(d.by_ref().take(k.pow(*arity as u32)).map(|x| *x as u8));
    }
    for (i, (_, arity)) in c.funcs.iter().enumerate() {
        funcs[i].clear();
        funcs[i].extend(d.by_ref().take(k.pow(*arity as u32)).map(|x| *x as u32));
    }
}

fn build_finite(c: &Compiled, k: usize, values: &[Rat], idx: u64, radices: &[u64]) -> Interpretation {
    let mut ds = vec![0u64; radices.len()];
    digits(idx, radices, &mut ds);
    let mut i = Interpretation::finite(k);
    let mut d = ds.into_iter();
    for (p, arity) in &c.preds {
        for cell in 0..k.pow(*arity as u32) {
            i.set_atom(p, unflatten(cell, k, *arity), values[d.next().unwrap() as usize]);
        }
    }
    for (g, arity) in &c.funcs {
        for cell in 0..k.pow(*arity as u32) {
            i.set_func(g, unflatten(cell, k, *arity), d.next().unwrap());
        }
    }
    i
}

fn search(f: &Formula, s: &SearchSpace, goal: Goal) -> Result<(Option<(Interpretation, Rat)>, Bounds), SearchError> {
    let c = Compiled::new(f);
    let values = &s.truth_values;
    let top = (values.len() - 1) as u8;
    let mut bounds = Bounds {
        set_name: s.set_name.clone(),
        values: values.len(),
        domains: (s.min_domain, s.max_domain),
        templates: s.templates.len(),
        interpretations: 0,
        inconclusive: 0,
        capped: false,
        templates_skipped: false,
    };
    for k in s.min_domain..=s.max_domain {
        let lay = layout(&c, k, values.len());
        let total = match lay.total {
            Some(t) if bounds.interpretations.saturating_add(t) <= s.cap => t,
            _ => {
                bounds.capped = true;
                return Ok((None, bounds));
            }
        };
        let slots = c.slots;
        let hit = (0..total)
            .into_par_iter()
            .map_init(
                || {
                    let preds: Vec<Vec<u8>> = vec![Vec::new(); c.preds.len()];
                    let funcs: Vec<Vec<u32>> = vec![Vec::new(); c.funcs.len()];
                    (preds, funcs, vec![0u64; lay.radices.len()], vec![0u32; slots])
                },
                |(preds, funcs, ds, env), idx| {
                    digits(idx, &lay.radices, ds);
                    fill_tables(&c, k, ds, preds, funcs);
                    let t = Tables { size: k, preds: &preds[..], funcs: &funcs[..] };
                    goal.hit_index(c.eval(&t, 0u8, top, env), top).then_some(idx)
                },
            )
            .find_first(Option::is_some)
            .flatten();
        match hit {
            Some(idx) => {
                bounds.interpretations += idx + 1;
                let mut i = build_finite(&c, k, values, idx, &lay.radices);
                i.truth_set = s.descriptor.clone();
                let v = eval(f, &i)?;
                debug_assert!(goal.hit(v));
                return Ok((Some((i, v)), bounds));
            }
            None => bounds.interpretations += total,
        }
    }
    if s.templates.is_empty() {
        return Ok((None, bounds));
    }
    let preds = f.predicates();
    let monadic = f.functions().is_empty() && preds.values().all(|a| *a <= 1);
    let unary: Vec<&String> = preds.iter().filter(|(_, a)| **a == 1).map(|(p, _)| p).collect();
    let nullary: Vec<&String> = preds.iter().filter(|(_, a)| **a == 0).map(|(p, _)| p).collect();
    if !monadic || unary.is_empty() {
        bounds.templates_skipped = !monadic;
        return Ok((None, bounds));
    }
    let mut radices: Vec<u64> = unary.iter().map(|_| s.templates.len() as u64).collect();
    radices.extend(nullary.iter().map(|_| values.len() as u64));
    let total = match radices.iter().try_fold(1u64, |acc, r| acc.checked_mul(*r)) {
        Some(t) if bounds.interpretations.saturating_add(t) <= s.cap => t,
        _ => {
            bounds.capped = true;
            return Ok((None, bounds));
        }
    };
    let build = |idx: u64| {
        let mut ds = vec![0u64; radices.len()];
        digits(idx, &radices, &mut ds);
        let mut i = Interpretation::nat();
        for (p, d) in unary.iter().zip(&ds) {
            i.set_seq(p, s.templates[*d as usize].clone());
        }
        for (p, d) in nullary.iter().zip(&ds[unary.len()..]) {
            i.set_prop(p, values[*d as usize]);
        }
        i.truth_set = s.descriptor.clone();
        i
    };
    let outcomes: Vec<Result<Option<Rat>, EvalError>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let v = eval(f, &build(idx))?;
            Ok(goal.hit(v).then_some(v))
        })
        .collect();
    for (idx, o) in outcomes.iter().enumerate() {
        match o {
            Ok(Some(v)) => {
                bounds.interpretations += idx as u64 + 1;
                return Ok((Some((build(idx as u64), *v)), bounds));
            }
            Ok(None) => {}
            Err(EvalError::Unsupported(_)) => bounds.inconclusive += 1,
            Err(e) => return Err(e.clone().into()),
        }
    }
    bounds.interpretations += total;
    Ok((None, bounds))
}

/// First interpretation (in enumeration order) giving the universal closure
/// of `f` a value below 1.
pub fn find_countermodel(f: &Formula, s: &SearchSpace) -> Result<Verdict, SearchError> {
    let closed = f.universal_closure();
    let (hit, bounds) = search(&closed, s, Goal::Refute)?;
    Ok(match hit {
        Some((i, v)) => Verdict::Countermodel(i, v),
        None if bounds.capped || bounds.inconclusive > 0 => Verdict::NotFound(bounds),
        None => Verdict::Valid(bounds),
    })
}

/// First interpretation satisfying the existential closure of `f` in the given sense.
pub fn check_sat(f: &Formula, mode: SatMode, s: &SearchSpace) -> Result<Verdict, SearchError> {
    let closed = f.existential_closure();
    let result = match mode {
        SatMode::OneSat => search(&closed, s, Goal::One)?,
        SatMode::PosSat => search(&closed, s, Goal::Positive)?,
        SatMode::ClassicalSat => {
            let mut two = SearchSpace::classical(s.max_domain).with_cap(s.cap);
            two.min_domain = s.min_domain;
            let r = search(&closed, &two, Goal::One)?;
            if let Some((i, _)) = &r.0 {
                debug_assert!(classical_eval(&closed, i)?);
            }
            r
        }
    };
    Ok(match result {
        (Some((i, v)), _) => Verdict::Witness(i, v),
        (None, b) => Verdict::NotFound(b),
    })
}
