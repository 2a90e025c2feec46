//! One function per subcommand.

use std::path::Path;

use goedel_core::chains::{self, enumerate_chains, first_refuting_chain, psi_eval};
use goedel_core::eval::eval_traced;
use goedel_core::formula::{parse_with_warnings, print, print_raw, Formula};
use goedel_core::interp::{self, validate, Interpretation};
use goedel_core::search::{check_sat, find_countermodel, render_report, run_fixture_suite, SatMode, SearchSpace, Status, Verdict};
use goedel_core::transform::{self, prenexify, prenexify_pos_valid, validity_prenex_re, SkolemMode};
use goedel_core::truthset::{classify as classify_set, fixture_descriptors, Cardinality, GoedelSetDescriptor, SetKind};
use goedel_core::value::{format_rat, parse_truth};

use crate::output::{CliError, Outcome, Record, CAPPED, NEGATIVE, OK};
use crate::{PrenexMode, SearchMode, SkolemArg};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// `@path` reads the formula from a file.
fn formula_arg(arg: &str) -> Result<Formula, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(p) => read(Path::new(p))?,
        None => arg.to_string(),
    };
    let (f, warnings) = parse_with_warnings(text.trim())?;
    for w in warnings {
        eprintln!("warning[free-variable]: {}:{}: '{}' occurs free", w.line, w.column, w.var);
    }
    Ok(f)
}

/// A built-in name (`G3`, `Gup+D`, …) or a descriptor file.
fn set_arg(arg: &str) -> Result<GoedelSetDescriptor, CliError> {
    match GoedelSetDescriptor::builtin(arg) {
        Ok(d) => Ok(d),
        Err(_) if Path::new(arg).is_file() => Ok(GoedelSetDescriptor::parse_text(&read(Path::new(arg))?)?),
        Err(e) => Err(e.into()),
    }
}

fn interp_arg(path: &Path) -> Result<Interpretation, CliError> {
    Ok(Interpretation::parse_text(&read(path)?)?)
}

pub fn parse(formula: &str, raw: bool) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let shown = if raw { print_raw(&f) } else { print(&f) };
    let rec: Record = vec![("command", "parse".into()), ("formula", shown.clone()), ("prenex", goedel_core::formula::is_prenex(&f).to_string())];
    Ok(Outcome::new(format!("{shown}\n"), vec![rec], OK))
}

pub fn eval(formula: &str, interp_path: &Path, set: Option<&str>, trace: bool) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let i = interp_arg(interp_path)?;
    let target = match set {
        Some(s) => Some(set_arg(s)?),
        None => i.truth_set.clone(),
    };
    if let Some(d) = &target {
        let problems = validate(&i, d);
        if !problems.is_empty() {
            return Err(CliError::Input(format!("interpretation is not a {}-interpretation: {}", d.name, problems.join("; "))));
        }
    }
    let (v, t) = eval_traced(&f, &i)?;
    let mut text = format!("{}\n", format_rat(&v));
    if trace {
        text.push_str(&t.render());
    }
    let mut records = vec![vec![("command", "eval".into()), ("formula", print(&f)), ("value", format_rat(&v))]];
    if trace {
        for e in &t.entries {
            records.push(vec![("depth", e.depth.to_string()), ("formula", print(&e.formula)), ("value", format_rat(&e.value))]);
        }
    }
    Ok(Outcome::new(text, records, OK))
}

pub fn prenex(formula: &str, set: &str, mode: PrenexMode, trace: bool) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let d = set_arg(set)?;
    let c = classify_set(&d)?;
    let r = match mode {
        PrenexMode::Logical => prenexify(&f, &c)?,
        PrenexMode::PosValid => prenexify_pos_valid(&f, &c)?,
        PrenexMode::ValidityRe => validity_prenex_re(&f)?,
    };
    let mut text = format!("{}\nguarantee: {}\n", print(&r.prenex), r.guarantee);
    if trace {
        text.push_str(&r.render_trace());
    }
    let mut records = vec![vec![
        ("command", "prenex".into()),
        ("set", d.name.clone()),
        ("class", c.class.label().into()),
        ("prenex", print(&r.prenex)),
        ("guarantee", r.guarantee.into()),
    ]];
    if trace {
        records.extend(r.trace.iter().map(|s| vec![("rule", s.rule.to_string()), ("position", s.position.clone())]));
    }
    Ok(Outcome::new(text, records, OK))
}

pub fn skolemize(formula: &str, mode: SkolemArg) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let m = match mode {
        SkolemArg::Validity => SkolemMode::Validity,
        SkolemArg::Sat => SkolemMode::Satisfiability,
    };
    let s = transform::skolemize(&f, m)?;
    let shown = print(&s);
    Ok(Outcome::new(format!("{shown}\n"), vec![vec![("command", "skolemize".into()), ("formula", shown)]], OK))
}

pub fn kuroda(formula: &str) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let k = transform::kuroda(&f)?;
    let shown = print(&k);
    Ok(Outcome::new(format!("{shown}\n"), vec![vec![("command", "kuroda".into()), ("formula", shown)]], OK))
}

pub fn chains(formula: Option<&str>, atoms: Option<&str>, restricted: bool, levels: Option<usize>) -> Result<Outcome, CliError> {
    let f = formula.map(formula_arg).transpose()?;
    let names: Vec<String> = match (&f, atoms) {
        (Some(f), _) => {
            if !f.is_propositional() {
                return Err(chains::ChainError::NotPropositional.into());
            }
            f.prop_atoms()
        }
        (None, Some(a)) => a.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        (None, None) => return Err(CliError::Input("give --formula or --atoms".into())),
    };
    let list = enumerate_chains(&names, restricted, levels)?;
    let mut text = String::new();
    let mut records = Vec::new();
    for c in &list {
        let mut rec: Record = vec![("chain", c.to_string())];
        match &f {
            Some(f) => {
                let v = psi_eval(f, c)?;
                let shown = print(&c.block_formula(v));
                text.push_str(&format!("{c}  psi={shown}\n"));
                rec.push(("psi", shown));
            }
            None => text.push_str(&format!("{c}\n")),
        }
        records.push(rec);
    }
    text.push_str(&format!("{} chains\n", list.len()));
    Ok(Outcome::new(text, records, OK))
}

pub fn cnf(formula: &str, kind: u8) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let c = if kind == 1 { chains::cnf_delta_1(&f)? } else { chains::cnf_delta_2(&f)? };
    let shown = print(&c);
    Ok(Outcome::new(format!("{shown}\n"), vec![vec![("command", "cnf".into()), ("kind", kind.to_string()), ("formula", shown)]], OK))
}

fn levels_of(d: &GoedelSetDescriptor) -> Option<usize> {
    match (&d.kind, d.cardinality()) {
        (SetKind::Finite(v), _) => Some(v.len()),
        (_, Some(Cardinality::Finite(n))) => Some(n),
        _ => None,
    }
}

pub fn valid_prop(formula: &str, levels: Option<usize>, set: Option<&str>) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let levels = match set {
        Some(s) => levels_of(&set_arg(s)?),
        None => levels,
    };
    let refuting = first_refuting_chain(&f, levels)?;
    let verdict = if refuting.is_none() { "valid" } else { "invalid" };
    let mut text = format!("{verdict}\n");
    let mut rec: Record = vec![("command", "valid-prop".into()), ("verdict", verdict.into())];
    rec.push(("levels", levels.map_or("all".to_string(), |l| l.to_string())));
    if let Some(c) = &refuting {
        text.push_str(&format!("refuting chain: {c}\n"));
        rec.push(("chain", c.to_string()));
    }
    Ok(Outcome::new(text, vec![rec], if refuting.is_none() { OK } else { NEGATIVE }))
}

pub fn classify(set: &str) -> Result<Outcome, CliError> {
    let d = set_arg(set)?;
    let c = classify_set(&d)?;
    let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
    let shifts: Vec<String> = c.shift_rules_available.iter().map(|s| s.to_string()).collect();
    let rec: Record = vec![
        ("set", c.set_name.clone()),
        ("class", c.class.label().into()),
        ("delta", yn(c.with_delta)),
        ("logical_prenex", yn(c.logical_prenex)),
        ("logical_prenex_with_delta", yn(c.logical_prenex_with_delta)),
        ("pos_valid_prenex", yn(c.pos_valid_prenex)),
        ("pos_valid_prenex_with_delta", yn(c.pos_valid_prenex_with_delta)),
        ("validity_equiv_prenex", c.validity_equiv_prenex.to_string()),
        ("validity_equiv_prenex_with_delta", c.validity_equiv_prenex_with_delta.to_string()),
        ("re_logic", yn(c.logic_recursively_enumerable)),
        ("re_prenex_fragment", c.prenex_fragment_recursively_enumerable.to_string()),
        ("shifts", shifts.join(",")),
    ];
    Ok(Outcome::new(c.report(), vec![rec], OK))
}

pub fn glue(interp_path: &Path, omega: &str) -> Result<Outcome, CliError> {
    let i = interp_arg(interp_path)?;
    let w = parse_truth(omega)?;
    let g = interp::glue(&i, w)?;
    let text = g.to_text();
    let mut records = vec![vec![("command", "glue".into()), ("omega", format_rat(&w))]];
    records.extend(text.lines().map(|l| vec![("line", l.to_string())]));
    Ok(Outcome::new(text, records, OK))
}

fn verdict_status(v: &Verdict) -> u8 {
    match v {
        Verdict::Valid(_) | Verdict::Witness(..) => OK,
        Verdict::NotFound(b) if b.capped => CAPPED,
        _ => NEGATIVE,
    }
}

pub fn search(formula: &str, set: &str, mode: SearchMode, max_domain: usize, templates: bool) -> Result<Outcome, CliError> {
    let f = formula_arg(formula)?;
    let d = set_arg(set)?;
    let space = SearchSpace::for_set(&d, max_domain, templates)?;
    let v = match mode {
        SearchMode::Valid => find_countermodel(&f, &space)?,
        SearchMode::OneSat => check_sat(&f, SatMode::OneSat, &space)?,
        SearchMode::PosSat => check_sat(&f, SatMode::PosSat, &space)?,
        SearchMode::ClassicalSat => check_sat(&f, SatMode::ClassicalSat, &space)?,
    };
    let mut rec: Record = vec![("command", "search".into()), ("set", d.name.clone()), ("verdict", v.label().into())];
    match &v {
        Verdict::Countermodel(i, val) | Verdict::Witness(i, val) => {
            rec.push(("value", format_rat(val)));
            rec.push(("interp", i.to_text()));
        }
        Verdict::Valid(b) | Verdict::NotFound(b) => rec.push(("bounds", b.to_string())),
    }
    Ok(Outcome::new(v.render(), vec![rec], verdict_status(&v)))
}

pub fn fixtures(sets: &[String]) -> Result<Outcome, CliError> {
    let descriptors = if sets.is_empty() {
        fixture_descriptors()
    } else {
        sets.iter().map(|s| set_arg(s)).collect::<Result<Vec<_>, _>>()?
    };
    let results = run_fixture_suite(&descriptors);
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let mut text = render_report(&results);
    let passed = results.iter().filter(|r| r.status == Status::Pass).count();
    text.push_str(&format!("summary passed={passed} failed={failed} skipped={}\n", results.len() - passed - failed));
    let records = results
        .iter()
        .map(|r| {
            vec![
                ("fixture", r.fixture.clone()),
                ("class", r.set.clone()),
                ("expected", r.expected.clone()),
                ("got", r.got.clone()),
                ("method", r.method.into()),
                ("tag", r.tag.into()),
                ("result", r.status.to_string()),
            ]
        })
        .collect();
    Ok(Outcome::new(text, records, if failed == 0 { OK } else { NEGATIVE }))
}
