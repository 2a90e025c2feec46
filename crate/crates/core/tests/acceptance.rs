//! Acceptance suite: eleven criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines always show in
//! `cargo test` output. Oracles here are written independently of the
//! library's evaluator.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use goedel_core::chains::{cnf_delta_1, cnf_delta_2, decide_valid_prop, enumerate_chains, psi_eval};
use goedel_core::eval::eval;
use goedel_core::formula::{is_prenex, parse, Formula, Term};
use goedel_core::interp::{glue, glue_rule, omega_isolated_from_above, Interpretation};
use goedel_core::search::{check_sat, fin, find_countermodel, fixtures, run_fixture_suite, SatMode, SearchSpace, Status, Verdict};
use goedel_core::seq::SeqValue;
use goedel_core::transform::{kuroda, prenexify, skolemize, SkolemMode, TransformError};
use goedel_core::truthset::{classify, fixture_descriptors, GoedelSetDescriptor, Ternary};
use goedel_core::value::{format_rat, rat, vm_values, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Independent oracle: Gödel semantics written out directly.

struct Model<'a> {
    size: usize,
    props: &'a BTreeMap<String, Rat>,
    unary: &'a BTreeMap<String, Vec<Rat>>,
}

fn o_imp(a: Rat, b: Rat) -> Rat {
    if a <= b {
        Rat::from_integer(1)
    } else {
        b
    }
}

fn oracle(f: &Formula, m: &Model, env: &mut Vec<(String, usize)>) -> Rat {
    let one = Rat::from_integer(1);
    let zero = Rat::from_integer(0);
    match f {
        Formula::Bottom => zero,
        Formula::Top => one,
        Formula::Atom(p, args) if args.is_empty() => m.props[p],
        Formula::Atom(p, args) => {
            let Term::Var(v) = &args[0] else { panic!("oracle handles variables only") };
            let e = env.iter().rev().find(|(n, _)| n == v).expect("bound").1;
            m.unary[p][e]
        }
        Formula::And(a, b) => oracle(a, m, env).min(oracle(b, m, env)),
        Formula::Or(a, b) => oracle(a, m, env).max(oracle(b, m, env)),
        Formula::Implies(a, b) => o_imp(oracle(a, m, env), oracle(b, m, env)),
        Formula::Delta(a) => {
            if oracle(a, m, env) == one {
                one
            } else {
                zero
            }
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let is_all = matches!(f, Formula::Forall(..));
            let mut acc = if is_all { one } else { zero };
            for e in 0..m.size {
                env.push((x.clone(), e));
                let v = oracle(a, m, env);
                env.pop();
                acc = if is_all { acc.min(v) } else { acc.max(v) };
            }
            acc
        }
    }
}

/// Calls `visit` on every assignment of `n` names into `values`.
fn each_assignment(n: usize, values: &[Rat], mut visit: impl FnMut(&[Rat]) -> bool) -> bool {
    let mut idx = vec![0usize; n];
    let mut cur = vec![values[0]; n];
    loop {
        if !visit(&cur) {
            return false;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values.len() {
                cur[k] = values[idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = values[0];
        }
    }
}

/// Propositional evaluation with atoms looked up positionally.
fn prop_oracle(f: &Formula, names: &[String], vals: &[Rat]) -> Rat {
    let r = |g: &Formula| prop_oracle(g, names, vals);
    match f {
        Formula::Bottom => Rat::from_integer(0),
        Formula::Top => Rat::from_integer(1),
        Formula::Atom(p, _) => vals[names.iter().position(|n| n == p).unwrap()],
        Formula::And(a, b) => r(a).min(r(b)),
        Formula::Or(a, b) => r(a).max(r(b)),
        Formula::Implies(a, b) => o_imp(r(a), r(b)),
        Formula::Delta(a) => Rat::from_integer((r(a) == Rat::from_integer(1)) as i64),
        _ => panic!("propositional oracle"),
    }
}

fn brute_valid_prop(f: &Formula, values: &[Rat]) -> bool {
    let names = f.prop_atoms();
    let one = Rat::from_integer(1);
    each_assignment(names.len(), values, |a| prop_oracle(f, &names, a) == one)
}

/// Every interpretation of nullary `props` and unary `preds` over domains `1..=max_domain`.
fn each_fo_model(props: &[String], preds: &[String], values: &[Rat], max_domain: usize, mut visit: impl FnMut(&Model) -> bool) -> bool {
    for size in 1..=max_domain {
        let ok = each_assignment(props.len() + preds.len() * size, values, |a| {
            let p: BTreeMap<String, Rat> = props.iter().cloned().zip(a.iter().copied()).collect();
            let u: BTreeMap<String, Vec<Rat>> =
                preds.iter().enumerate().map(|(i, q)| (q.clone(), a[props.len() + i * size..][..size].to_vec())).collect();
            visit(&Model { size, props: &p, unary: &u })
        });
        if !ok {
            return false;
        }
    }
    true
}

fn symbols(f: &Formula) -> (Vec<String>, Vec<String>) {
    let preds = f.predicates();
    let props = preds.iter().filter(|(_, a)| **a == 0).map(|(p, _)| p.clone()).collect();
    let unary = preds.iter().filter(|(_, a)| **a == 1).map(|(p, _)| p.clone()).collect();
    (props, unary)
}

// ---------------------------------------------------------------------------
// Exhaustive propositional corpora.

#[derive(Clone)]
enum Shape {
    Leaf,
    Unary(Box<Shape>),
    Binary(Box<Shape>, Box<Shape>),
}

/// All shapes with exactly `n` connectives.
fn shapes(n: usize, unary: bool) -> Vec<Shape> {
    if n == 0 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    if unary {
        out.extend(shapes(n - 1, unary).into_iter().map(|s| Shape::Unary(Box::new(s))));
    }
    for i in 0..n {
        for l in shapes(i, unary) {
            for r in shapes(n - 1 - i, unary) {
                out.push(Shape::Binary(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

fn count(s: &Shape) -> (usize, usize, usize) {
    match s {
        Shape::Leaf => (1, 0, 0),
        Shape::Unary(a) => {
            let (l, u, b) = count(a);
            (l, u + 1, b)
        }
        Shape::Binary(a, c) => {
            let (l1, u1, b1) = count(a);
            let (l2, u2, b2) = count(c);
            (l1 + l2, u1 + u2, b1 + b2 + 1)
        }
    }
}

fn fill(s: &Shape, leaves: &mut impl Iterator<Item = Formula>, ops: &mut impl Iterator<Item = usize>) -> Formula {
    match s {
        Shape::Leaf => leaves.next().unwrap(),
        Shape::Unary(a) => Formula::delta(fill(a, leaves, ops)),
        Shape::Binary(a, b) => {
            let op = ops.next().unwrap();
            let (x, y) = (fill(a, leaves, ops), fill(b, leaves, ops));
            match op {
                0 => Formula::and(x, y),
                1 => Formula::or(x, y),
                _ => Formula::implies(x, y),
            }
        }
    }
}

fn digits(mut idx: u64, base: u64, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for slot in d.iter_mut().rev() {
        *slot = (idx % base) as usize;
        idx /= base;
    }
    d
}

/// Every formula with at most `max` connectives over `leaves`, streamed to `visit`.
fn each_formula(leaves: &[Formula], max: usize, with_delta: bool, visit: &mut impl FnMut(&Formula) -> bool) -> (u64, bool) {
    let mut seen = 0u64;
    for n in 0..=max {
        for s in shapes(n, with_delta) {
            let (nl, _, nb) = count(&s);
            let total = (leaves.len() as u64).pow(nl as u32) * 3u64.pow(nb as u32);
            for idx in 0..total {
                let ld = digits(idx / 3u64.pow(nb as u32), leaves.len() as u64, nl);
                let od = digits(idx % 3u64.pow(nb as u32), 3, nb);
                let f = fill(&s, &mut ld.into_iter().map(|i| leaves[i].clone()), &mut od.into_iter());
                seen += 1;
                if !visit(&f) {
                    return (seen, false);
                }
            }
        }
    }
    (seen, true)
}

/// Random formula of depth at most `depth`; the exhaustive corpora stop at a
/// connective count, so these samples reach the full depth.
fn random_prop(rng: &mut ChaCha8Rng, depth: usize, leaves: &[Formula], with_delta: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.15) {
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    if with_delta && rng.gen_bool(0.15) {
        return Formula::delta(random_prop(rng, depth - 1, leaves, with_delta));
    }
    let (a, b) = (random_prop(rng, depth - 1, leaves, with_delta), random_prop(rng, depth - 1, leaves, with_delta));
    match rng.gen_range(0..3) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        _ => Formula::implies(a, b),
    }
}

/// Exhaustive corpus followed by `samples` random formulas of depth at most `depth`.
fn each_corpus_formula(leaves: &[Formula], max: usize, with_delta: bool, depth: usize, samples: usize, seed: u64, mut visit: impl FnMut(&Formula) -> bool) -> u64 {
    let (n, ok) = each_formula(leaves, max, with_delta, &mut visit);
    if !ok {
        return n;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        if !visit(&random_prop(&mut rng, depth, leaves, with_delta)) {
            return n + k as u64 + 1;
        }
    }
    n + samples as u64
}

/// Random depth-4 samples added to the first two criteria.
const PROP_SAMPLES: usize = 20_000;

fn pqr_leaves() -> Vec<Formula> {
    vec![Formula::prop("p"), Formula::prop("q"), Formula::prop("r"), Formula::Bottom, Formula::Top]
}

/// Connective bound of the first two criteria's corpus.
const PROP_CONNECTIVES: usize = 4;

fn criterion_1() -> Outcome {
    let five = vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
    let mut disagreement = None;
    let mut valid = 0u64;
    let n = each_corpus_formula(&pqr_leaves(), PROP_CONNECTIVES, false, 4, PROP_SAMPLES, 1, |f| {
        let chains = decide_valid_prop(f, None).unwrap();
        if chains != brute_valid_prop(f, &five) {
            disagreement = Some(format!("{f}"));
            return false;
        }
        valid += chains as u64;
        true
    });
    match disagreement {
        Some(f) => Err(format!("disagreement on {f}")),
        None => Ok(format!(
            "{n} formulas (all with <= {PROP_CONNECTIVES} connectives over p,q,r,bot,top plus {PROP_SAMPLES} random of depth <= 4); {valid} valid; zero disagreements"
        )),
    }
}

fn criterion_2() -> Outcome {
    let mut disagreement = None;
    let tables: Vec<Vec<Rat>> = (2..=5).map(vm_values).collect();
    let n = each_corpus_formula(&pqr_leaves(), PROP_CONNECTIVES, false, 4, PROP_SAMPLES, 2, |f| {
        for (m, vals) in (2..=5).zip(&tables) {
            if decide_valid_prop(f, Some(m)).unwrap() != brute_valid_prop(f, vals) {
                disagreement = Some(format!("{f} at m={m}"));
                return false;
            }
        }
        true
    });
    match disagreement {
        Some(f) => Err(format!("disagreement on {f}")),
        None => Ok(format!("{n} formulas (same exhaustive corpus plus {PROP_SAMPLES} random of depth <= 4) x m=2..5; zero disagreements")),
    }
}

// ---------------------------------------------------------------------------

fn set(name: &str) -> GoedelSetDescriptor {
    GoedelSetDescriptor::builtin(name).unwrap()
}

fn fixture_formula(name: &str) -> Formula {
    fixtures().into_iter().find(|f| f.name == name).unwrap().formula
}

fn criterion_3() -> Outcome {
    let bounded = |f: &Formula, s: &str| -> Result<(), String> {
        let space = SearchSpace::for_set(&set(s), 3, true).unwrap();
        match find_countermodel(f, &space).unwrap() {
            Verdict::Valid(_) => Ok(()),
            other => Err(format!("{f} in {s}: {}", other.label())),
        }
    };
    for s in ["G3", "G4", "G5", "Gup", "Gdown", "G01"] {
        bounded(&fixture_formula("S1"), s)?;
    }
    for name in ["S2", "S3", "C-up", "C-down"] {
        for s in ["G3", "G4", "G5", "Gup"] {
            bounded(&fixture_formula(name), s)?;
        }
    }
    // explicit descending countermodels with value exactly 0
    let mut down = Interpretation::nat();
    down.set_seq("P", SeqValue::new(rat(0, 1), rat(1, 1), rat(2, 1)));
    down.truth_set = Some(set("Gdown"));
    for name in ["C-up", "ISO0"] {
        let f = fixture_formula(name);
        ensure(eval(&f, &down).unwrap() == rat(0, 1), || format!("{name} under 1/(n+2) is not 0"))?;
        let v = find_countermodel(&f, &SearchSpace::for_set(&set("Gdown"), 3, true).unwrap()).unwrap();
        match v {
            Verdict::Countermodel(i, val) if val == rat(0, 1) && i.seqs.get("P") == down.seqs.get("P") => {}
            other => return Err(format!("{name} in Gdown: {}", other.label())),
        }
    }
    for n in 2..=6 {
        let f = fin(n);
        ensure(decide_valid_prop(&f, Some(n)).unwrap(), || format!("Fin({n}) not valid at level {n}"))?;
        ensure(!decide_valid_prop(&f, Some(n + 1)).unwrap(), || format!("Fin({n}) valid at level {}", n + 1))?;
        let space = SearchSpace::for_set(&GoedelSetDescriptor::vm(n + 1), 1, false).unwrap();
        match find_countermodel(&f, &space).unwrap() {
            Verdict::Countermodel(i, v) if v < rat(1, 1) && eval(&f, &i).unwrap() == v => {}
            other => return Err(format!("Fin({n}) over V_{}: {}", n + 1, other.label())),
        }
    }
    let shift = fixture_formula("D-exists");
    let Formula::And(forward, _) = &shift else { return Err(format!("unexpected shape {shift}")) };
    let Formula::Implies(left, right) = &**forward else { return Err(format!("unexpected shape {shift}")) };
    match find_countermodel(&shift, &SearchSpace::for_set(&set("Gup"), 3, true).unwrap()).unwrap() {
        Verdict::Countermodel(i, _) => {
            let (l, r) = (eval(left, &i).unwrap(), eval(right, &i).unwrap());
            ensure(l == rat(1, 1) && r == rat(0, 1), || format!("D-exists shift sides {l} / {r}"))?;
        }
        other => return Err(format!("D-exists shift in Gup: {}", other.label())),
    }
    let sets: Vec<GoedelSetDescriptor> = ["G3", "G4", "G5", "Gup", "Gdown", "G01"].iter().map(|s| set(s)).collect();
    let results = run_fixture_suite(&sets);
    let failed: Vec<String> = results.iter().filter(|r| r.status == Status::Fail).map(|r| r.line()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("S1..S3, C-up, C-down, ISO0, Fin(2..6), D-exists shift as stated; fixture suite {} rows all pass", results.len()))
}

// ---------------------------------------------------------------------------

/// Random formula without ∀ (unless `allow_forall`) and without Δ.
fn random_formula(rng: &mut ChaCha8Rng, depth: usize, scope: &mut Vec<String>, allow_forall: bool) -> Formula {
    let atom = |rng: &mut ChaCha8Rng, scope: &Vec<String>| -> Formula {
        if scope.is_empty() || rng.gen_bool(0.3) {
            Formula::prop(["B", "C"][rng.gen_range(0..2)])
        } else {
            let v = &scope[rng.gen_range(0..scope.len())];
            Formula::pred1(["P", "Q"][rng.gen_range(0..2)], v)
        }
    };
    if depth == 0 || rng.gen_bool(0.2) {
        return atom(rng, scope);
    }
    match rng.gen_range(0..6) {
        0 => Formula::and(random_formula(rng, depth - 1, scope, allow_forall), random_formula(rng, depth - 1, scope, allow_forall)),
        1 => Formula::or(random_formula(rng, depth - 1, scope, allow_forall), random_formula(rng, depth - 1, scope, allow_forall)),
        2 | 3 => Formula::implies(random_formula(rng, depth - 1, scope, allow_forall), random_formula(rng, depth - 1, scope, allow_forall)),
        _ => {
            let x = format!("x{}", scope.len());
            scope.push(x.clone());
            let body = random_formula(rng, depth - 1, scope, allow_forall);
            scope.pop();
            if allow_forall && rng.gen_bool(0.5) {
                Formula::forall(&x, body)
            } else {
                Formula::exists(&x, body)
            }
        }
    }
}

fn random_interp(rng: &mut ChaCha8Rng, f: &Formula, values: &[Rat]) -> Interpretation {
    let k = rng.gen_range(1..=3);
    let mut i = Interpretation::finite(k);
    for (p, arity) in f.predicates() {
        if arity == 0 {
            i.set_prop(&p, values[rng.gen_range(0..values.len())]);
        } else {
            for e in 0..k as u64 {
                i.set_atom(&p, vec![e], values[rng.gen_range(0..values.len())]);
            }
        }
    }
    i
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let values: Vec<Rat> = (0..=12).map(|n| rat(n, 12)).collect();
    for case in 0..1000 {
        let f = random_formula(&mut rng, 4, &mut Vec::new(), false);
        let i = random_interp(&mut rng, &f, &values);
        let w = values[rng.gen_range(0..values.len() - 1)];
        let lhs = eval(&f, &glue(&i, w).unwrap()).unwrap();
        let rhs = glue_rule(eval(&f, &i).unwrap(), w);
        ensure(lhs == rhs, || format!("forall-free case {case}: {f} at omega={}: {lhs} vs {rhs}", format_rat(&w)))?;
    }
    // omega not isolated from above: the identity fails
    let mut nat = Interpretation::nat();
    nat.set_seq("P", SeqValue::new(rat(1, 2), rat(1, 1), rat(4, 1)));
    let all = parse("A x. P(x)").unwrap();
    let half = rat(1, 2);
    ensure(!omega_isolated_from_above(&nat, &all, half).unwrap(), || "1/2 reported isolated".into())?;
    let before = eval(&all, &nat).unwrap();
    let after = eval(&all, &glue(&nat, half).unwrap()).unwrap();
    ensure(before == half && after == rat(1, 1) && glue_rule(before, half) != after, || format!("witness: {before} then {after}"))?;
    let mut with_forall = 0;
    while with_forall < 200 {
        let f = random_formula(&mut rng, 4, &mut Vec::new(), true);
        if !f.has_forall() {
            continue;
        }
        with_forall += 1;
        let i = random_interp(&mut rng, &f, &values);
        let w = values[rng.gen_range(0..values.len() - 1)];
        ensure(omega_isolated_from_above(&i, &f, w).unwrap(), || format!("finite case not isolated: {f}"))?;
        let lhs = eval(&f, &glue(&i, w).unwrap()).unwrap();
        let rhs = glue_rule(eval(&f, &i).unwrap(), w);
        ensure(lhs == rhs, || format!("isolated case {f} at omega={}: {lhs} vs {rhs}", format_rat(&w)))?;
    }
    Ok("1000 forall-free triples hold; 1/2 + 1/(n+4) at omega=1/2 breaks the identity (1/2 becomes 1); 200 isolated forall cases hold".into())
}

// ---------------------------------------------------------------------------

fn criterion_5() -> Outcome {
    let f = fixture_formula("F");
    let mut i = Interpretation::nat();
    i.set_seq("P", SeqValue::new(rat(0, 1), rat(1, 1), rat(2, 1)));
    ensure(eval(&f, &i).unwrap() == rat(1, 1), || "F under 1/(n+2) is not 1".into())?;
    match check_sat(&f, SatMode::OneSat, &SearchSpace::for_set(&set("Gdown"), 3, true).unwrap()).unwrap() {
        Verdict::Witness(w, v) if v == rat(1, 1) && w.seqs.get("P") == i.seqs.get("P") => {}
        other => return Err(format!("one-sat search: {}", other.label())),
    }
    let classical = check_sat(&f, SatMode::ClassicalSat, &SearchSpace::classical(4)).unwrap();
    let Verdict::NotFound(b) = &classical else { return Err("classically satisfiable".into()) };
    ensure(!b.capped && b.interpretations == 2 + 4 + 8 + 16, || format!("classical search bounds {b}"))?;
    // the oracle agrees that no {0,1} model of size <= 4 exists
    let (props, preds) = symbols(&f);
    let none = each_fo_model(&props, &preds, &[rat(0, 1), rat(1, 1)], 4, |m| oracle(&f, m, &mut Vec::new()) != rat(1, 1));
    ensure(none, || "oracle found a classical model".into())?;
    match prenexify(&f, &classify(&set("Gdown")).unwrap()) {
        Err(TransformError::Unsupported(u)) => Ok(format!("witness 1/(n+2) gives 1; {} classical interpretations refute; prenexify: {}", b.interpretations, u.code())),
        other => Err(format!("prenexify returned {other:?}")),
    }
}

// ---------------------------------------------------------------------------

fn prenex_corpus() -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out: Vec<Formula> = Vec::new();
    while out.len() < 50 {
        let mut quants = 0;
        let f = gen_q(&mut rng, 3, &mut Vec::new(), &mut quants);
        if quants == 0 || out.contains(&f) || !f.free_vars().is_empty() {
            continue;
        }
        out.push(f);
    }
    out
}

/// Depth ≤ `depth`, at most two quantifiers in total, Δ allowed.
fn gen_q(rng: &mut ChaCha8Rng, depth: usize, scope: &mut Vec<String>, quants: &mut usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.15) {
        return if scope.is_empty() || rng.gen_bool(0.25) {
            Formula::prop(["B", "C"][rng.gen_range(0..2)])
        } else {
            Formula::pred1(["P", "Q"][rng.gen_range(0..2)], &scope[rng.gen_range(0..scope.len())])
        };
    }
    let pick = rng.gen_range(0..9);
    match pick {
        0 => Formula::and(gen_q(rng, depth - 1, scope, quants), gen_q(rng, depth - 1, scope, quants)),
        1 => Formula::or(gen_q(rng, depth - 1, scope, quants), gen_q(rng, depth - 1, scope, quants)),
        2 | 3 => Formula::implies(gen_q(rng, depth - 1, scope, quants), gen_q(rng, depth - 1, scope, quants)),
        4 => Formula::delta(gen_q(rng, depth - 1, scope, quants)),
        _ if *quants < 2 => {
            *quants += 1;
            let x = ["x", "y"][scope.len().min(1)].to_string();
            scope.push(x.clone());
            let body = gen_q(rng, depth - 1, scope, quants);
            scope.pop();
            if pick % 2 == 0 {
                Formula::forall(&x, body)
            } else {
                Formula::exists(&x, body)
            }
        }
        _ => Formula::not(gen_q(rng, depth - 1, scope, quants)),
    }
}

fn criterion_6() -> Outcome {
    let g3 = classify(&set("G3")).unwrap();
    let values = vm_values(3);
    let mut checked = 0u64;
    let corpus = prenex_corpus();
    for f in &corpus {
        let p = prenexify(f, &g3).map_err(|e| format!("{f}: {e}"))?.prenex;
        ensure(is_prenex(&p), || format!("{f} gave non-prenex {p}"))?;
        let (props, preds) = symbols(f);
        let mut bad = None;
        each_fo_model(&props, &preds, &values, 3, |m| {
            checked += 1;
            let (a, b) = (oracle(f, m, &mut Vec::new()), oracle(&p, m, &mut Vec::new()));
            if a != b {
                bad = Some(format!("{f} vs {p}: {a} / {b}"));
            }
            bad.is_none()
        });
        if let Some(b) = bad {
            return Err(b);
        }
    }
    Ok(format!("{} formulas, {checked} interpretations (domains <= 3, values V_3); all equal", corpus.len()))
}

// ---------------------------------------------------------------------------

fn criterion_7() -> Outcome {
    let tautologies = [
        "A | ~A", "~~A -> A", "((A -> B) -> A) -> A", "(A -> B) | (B -> A)", "~(A & B) -> ~A | ~B",
        "(~A -> ~B) -> (B -> A)", "(A -> B) | (B -> C)", "A -> A", "(A -> B) -> (~A | B)", "~(A -> B) -> A",
        "(A -> B) | A", "((A -> B) -> B) -> (A | B)", "(A & B) | (A & ~B) | ~A", "~~(A | B) -> A | B", "(A <-> B) | (A <-> ~B)",
        "((A -> B) -> C) -> ((B -> A) -> C) -> C", "~A | ~~A", "(~A -> A) -> A", "(A -> (B | C)) -> ((A -> B) | (A -> C))", "((A <-> B) <-> C) -> (A <-> (B <-> C))",
    ];
    let others = [
        "A", "A -> B", "A | B", "~A", "A & ~B -> C", "(A -> B) -> A", "A -> A & B", "~~A", "(A | B) -> A", "(A <-> B)",
        "~(A | B)", "A & B", "(A -> B) -> (B -> A)", "~A -> B", "(A | ~B) & (B | ~A)", "A | (B & C)", "(A -> B) & (B -> C)", "~(A & ~B)", "(A <-> ~A) | B", "(A -> ~A) -> B",
    ];
    let classical = |f: &Formula| brute_valid_prop(f, &[rat(0, 1), rat(1, 1)]);
    for (texts, expect) in [(&tautologies[..], true), (&others[..], false)] {
        for t in texts {
            let f = parse(t).unwrap();
            ensure(classical(&f) == expect, || format!("{t}: classical status is not {expect}"))?;
            let k = kuroda(&f).unwrap();
            ensure(decide_valid_prop(&k, None).unwrap() == expect, || format!("kuroda({t}) chain verdict differs"))?;
        }
    }
    Ok("20 tautologies map to chain-valid, 20 non-tautologies to chain-invalid".into())
}

// ---------------------------------------------------------------------------

/// Connective bound (Δ included) of the chain-normal-form corpus.
const CNF_CONNECTIVES: usize = 3;
/// Random depth-3 samples added to the chain-normal-form corpus.
const CNF_SAMPLES: usize = 20_000;

fn criterion_8() -> Outcome {
    let leaves = vec![Formula::prop("p"), Formula::prop("q"), Formula::Bottom, Formula::Top];
    let mut err = None;
    let mut delta_free = 0u64;
    let n = each_corpus_formula(&leaves, CNF_CONNECTIVES, true, 3, CNF_SAMPLES, 8, |f| {
        let c1 = cnf_delta_1(f).unwrap();
        if !decide_valid_prop(&Formula::iff(c1, f.clone()), None).unwrap() {
            err = Some(format!("cnf1 not equivalent for {f}"));
            return false;
        }
        if !f.has_delta() {
            delta_free += 1;
            let c2 = cnf_delta_2(f).unwrap();
            if c2.has_delta() {
                err = Some(format!("cnf2 of {f} contains D"));
                return false;
            }
            for ch in enumerate_chains(&f.prop_atoms(), true, None).unwrap() {
                let a = psi_eval(&Formula::delta(c2.clone()), &ch).unwrap();
                let b = psi_eval(&Formula::delta(f.clone()), &ch).unwrap();
                if a != b {
                    err = Some(format!("cnf2 of {f} differs on {ch}"));
                    return false;
                }
            }
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(format!(
            "{n} formulas (all with <= {CNF_CONNECTIVES} connectives over p,q,bot,top, D included, plus {CNF_SAMPLES} random of depth <= 3); {delta_free} D-free checked for cnf2"
        )),
    }
}

// ---------------------------------------------------------------------------

fn skolem_corpus() -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut out = Vec::new();
    let vars = ["x", "y", "z"];
    while out.len() < 30 {
        let len = rng.gen_range(1..=3);
        let prefix: Vec<(bool, &str)> = (0..len).map(|i| (rng.gen_bool(0.5), vars[i])).collect();
        let mut quants = 2;
        let scope: Vec<String> = vars[..len].iter().map(|v| v.to_string()).collect();
        let matrix = gen_q(&mut rng, 2, &mut scope.clone(), &mut quants);
        let mut f = matrix;
        for (all, v) in prefix.iter().rev() {
            f = if *all { Formula::forall(v, f) } else { Formula::exists(v, f) };
        }
        if !f.free_vars().is_empty() || out.contains(&f) {
            continue;
        }
        // keep the function-table search within bounds
        let s = skolemize(&f, SkolemMode::Validity).unwrap();
        let arity: usize = s.functions().values().map(|a| 3usize.pow(*a as u32)).sum();
        let cells: usize = s.predicates().values().map(|a| 3usize.pow(*a as u32)).sum();
        if 3f64.powi((arity + cells) as i32) > 2e6 {
            continue;
        }
        out.push(f);
    }
    out
}

fn criterion_9() -> Outcome {
    let space = SearchSpace::for_set(&set("G3"), 3, false).unwrap().with_cap(10_000_000);
    let (mut invalid, mut valid) = (0, 0);
    for f in skolem_corpus() {
        let s = skolemize(&f, SkolemMode::Validity).unwrap();
        let a = find_countermodel(&f, &space).unwrap();
        let b = find_countermodel(&s, &space).unwrap();
        ensure(!a.is_capped() && !b.is_capped(), || format!("{f}: search capped"))?;
        let (ca, cb) = (matches!(a, Verdict::Countermodel(..)), matches!(b, Verdict::Countermodel(..)));
        ensure(ca == cb, || format!("{f} ({}) vs {s} ({})", a.label(), b.label()))?;
        if ca {
            invalid += 1;
        } else {
            valid += 1;
        }
    }
    Ok(format!("30 prenex formulas ({invalid} refuted, {valid} bounded-valid); zero discrepancies"))
}

// ---------------------------------------------------------------------------

fn classification_report() -> String {
    fixture_descriptors().iter().map(|d| classify(d).unwrap().report()).collect::<Vec<_>>().join("\n")
}

fn criterion_10() -> Outcome {
    use Ternary::*;
    // rows: logical, logical+D, >0-valid, >0-valid+D, validity-equivalent, validity-equivalent+D
    let table: [(&str, [bool; 4], [Ternary; 2]); 6] = [
        ("G3", [true, true, true, true], [Yes, Yes]),
        ("Gup", [true, false, true, false], [Yes, Open]),
        ("Gdown", [false, false, false, false], [Open, Open]),
        ("G01", [false, false, false, false], [Yes, Yes]),
        ("uncountable-zero-outside-kernel", [false, false, false, false], [No, No]),
        ("uncountable-zero-isolated", [false, false, true, false], [Yes, Yes]),
    ];
    let mut cells = 0;
    for d in fixture_descriptors() {
        let c = classify(&d).unwrap();
        let (_, t1, t2) = table.iter().find(|(n, _, _)| *n == d.name).ok_or_else(|| format!("no row for {}", d.name))?;
        let got1 = [c.logical_prenex, c.logical_prenex_with_delta, c.pos_valid_prenex, c.pos_valid_prenex_with_delta];
        ensure(got1 == *t1, || format!("{}: first table {got1:?}", d.name))?;
        let got2 = [c.validity_equiv_prenex, c.validity_equiv_prenex_with_delta];
        ensure(got2 == *t2, || format!("{}: second table {got2:?}", d.name))?;
        cells += 4;
    }
    let report = classification_report();
    let golden_path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/classification.txt");
    if std::env::var_os("GOEDEL_BLESS").is_some() {
        std::fs::write(golden_path, &report).map_err(|e| e.to_string())?;
    }
    let golden = std::fs::read_to_string(golden_path).map_err(|e| format!("{golden_path}: {e}"))?;
    ensure(report == golden, || "report differs from tests/golden/classification.txt".into())?;
    Ok(format!("{cells} first-table cells and all second-table rows match; report equals the golden file byte for byte"))
}

fn criterion_11() -> Outcome {
    let f = fixture_formula("gadget-nn-delta");
    let space = SearchSpace::for_set(&set("G3"), 1, false).unwrap();
    let Verdict::Witness(i, v) = check_sat(&f, SatMode::OneSat, &space).unwrap() else {
        return Err("no 1-satisfying interpretation".into());
    };
    let a = i.atoms["A"][&Vec::<u64>::new()];
    ensure(a == rat(1, 2) && v == rat(1, 1), || format!("witness A={a}, value {v}"))?;
    ensure(brute_valid_prop(&Formula::not(f.clone()), &[rat(0, 1), rat(1, 1)]), || "oracle finds a classical model".into())?;
    match check_sat(&f, SatMode::ClassicalSat, &SearchSpace::classical(1)).unwrap() {
        Verdict::NotFound(b) if !b.capped => Ok("A = 1/2 gives value 1; no classical model".into()),
        other => Err(format!("classical search: {}", other.label())),
    }
}

fn main() {
    let criteria: [(u8, &str, fn() -> Outcome); 11] = [
        (1, "semantics oracle equivalence", criterion_1),
        (2, "finite-valued decision", criterion_2),
        (3, "fixture matrix", criterion_3),
        (4, "gluing", criterion_4),
        (5, "one-sat but classically unsat F", criterion_5),
        (6, "prenexation soundness in G3", criterion_6),
        (7, "double-negation translation", criterion_7),
        (8, "chain normal forms", criterion_8),
        (9, "skolemization", criterion_9),
        (10, "classification tables", criterion_10),
        (11, "not-not-A and not-D-A", criterion_11),
    ];
    let filter: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failures = 0;
    for (n, name, run) in criteria {
        if filter.is_some_and(|f| f != n) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("acceptance {n:>2} PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failures += 1;
                println!("acceptance {n:>2} FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
