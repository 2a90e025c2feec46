//! Gödel sets described concretely or by their order-topological flags, and
//! the classification of the corresponding logics.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::value::{format_rat, parse_rat, vm_values, Rat, ValueError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthSetError {
    #[error("invalid value list: {0}")]
    InvalidValues(String),
    #[error("inconsistent flags: {}", .0.join("; "))]
    Inconsistent(Vec<String>),
    #[error("missing flags: {}", .0.join(", "))]
    MissingFlags(Vec<String>),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("unknown built-in truth set '{0}'")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Value(#[from] ValueError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(usize),
    Countable,
    Uncountable,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "finite({n})"),
            Cardinality::Countable => f.write_str("countable"),
            Cardinality::Uncountable => f.write_str("uncountable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetKind {
    Finite(Vec<Rat>),
    VUp,
    VDown,
    UnitInterval,
    Abstract,
}

/// Order-topological features of a Gödel set. `None` means unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub cardinality: Option<Cardinality>,
    pub zero_isolated: Option<bool>,
    pub has_acc_point_from_above: Option<bool>,
    pub only_acc_point_is_one_from_below: Option<bool>,
    pub every_nbhd_of_zero_uncountable: Option<bool>,
    pub zero_in_perfect_kernel: Option<bool>,
}

const FLAG_NAMES: [&str; 6] = [
    "cardinality",
    "zero_isolated",
    "has_acc_point_from_above",
    "only_acc_point_is_one_from_below",
    "every_nbhd_of_zero_uncountable",
    "zero_in_perfect_kernel",
];

impl Flags {
    fn bools(&self) -> [(&'static str, Option<bool>); 5] {
        [
            (FLAG_NAMES[1], self.zero_isolated),
            (FLAG_NAMES[2], self.has_acc_point_from_above),
            (FLAG_NAMES[3], self.only_acc_point_is_one_from_below),
            (FLAG_NAMES[4], self.every_nbhd_of_zero_uncountable),
            (FLAG_NAMES[5], self.zero_in_perfect_kernel),
        ]
    }

    fn bool_mut(&mut self, name: &str) -> Option<&mut Option<bool>> {
        Some(match name {
            "zero_isolated" => &mut self.zero_isolated,
            "has_acc_point_from_above" => &mut self.has_acc_point_from_above,
            "only_acc_point_is_one_from_below" => &mut self.only_acc_point_is_one_from_below,
            "every_nbhd_of_zero_uncountable" => &mut self.every_nbhd_of_zero_uncountable,
            "zero_in_perfect_kernel" => &mut self.zero_in_perfect_kernel,
            _ => return None,
        })
    }

    fn complete(card: Cardinality, zi: bool, above: bool, only_one: bool, nbhd: bool, kernel: bool) -> Flags {
        Flags {
            cardinality: Some(card),
            zero_isolated: Some(zi),
            has_acc_point_from_above: Some(above),
            only_acc_point_is_one_from_below: Some(only_one),
            every_nbhd_of_zero_uncountable: Some(nbhd),
            zero_in_perfect_kernel: Some(kernel),
        }
    }

    /// Fills in flags forced by the known ones and reports contradictions.
    fn close(&self) -> Result<Flags, TruthSetError> {
        let mut f = self.clone();
        let mut problems = Vec::new();
        fn force(slot: &mut Option<bool>, value: bool, name: &str, why: &str, problems: &mut Vec<String>) {
            match *slot {
                Some(v) if v != value => problems.push(format!("{name} must be {value} because {why}")),
                _ => *slot = Some(value),
            }
        }
        for _ in 0..3 {
            match f.cardinality {
                Some(Cardinality::Finite(n)) => {
                    if n < 2 {
                        problems.push("a Gödel set contains 0 and 1".to_string());
                    }
                    force(&mut f.zero_isolated, true, "zero_isolated", "the set is finite", &mut problems);
                    force(&mut f.has_acc_point_from_above, false, "has_acc_point_from_above", "the set is finite", &mut problems);
                    force(&mut f.only_acc_point_is_one_from_below, false, "only_acc_point_is_one_from_below", "the set is finite", &mut problems);
                }
                Some(Cardinality::Countable) => {}
                Some(Cardinality::Uncountable) => {
                    force(&mut f.has_acc_point_from_above, true, "has_acc_point_from_above", "the set is uncountable", &mut problems);
                    force(&mut f.only_acc_point_is_one_from_below, false, "only_acc_point_is_one_from_below", "the set is uncountable", &mut problems);
                }
                None => {}
            }
            if matches!(f.cardinality, Some(Cardinality::Finite(_)) | Some(Cardinality::Countable)) {
                force(&mut f.every_nbhd_of_zero_uncountable, false, "every_nbhd_of_zero_uncountable", "the set is countable", &mut problems);
                force(&mut f.zero_in_perfect_kernel, false, "zero_in_perfect_kernel", "the set is countable", &mut problems);
            }
            if f.zero_isolated == Some(true) {
                force(&mut f.every_nbhd_of_zero_uncountable, false, "every_nbhd_of_zero_uncountable", "0 is isolated", &mut problems);
                force(&mut f.zero_in_perfect_kernel, false, "zero_in_perfect_kernel", "0 is isolated", &mut problems);
            }
            if f.zero_isolated == Some(false) {
                force(&mut f.has_acc_point_from_above, true, "has_acc_point_from_above", "0 is a limit point", &mut problems);
                force(&mut f.only_acc_point_is_one_from_below, false, "only_acc_point_is_one_from_below", "0 is a limit point", &mut problems);
            }
            if f.only_acc_point_is_one_from_below == Some(true) {
                force(&mut f.zero_isolated, true, "zero_isolated", "1 is the only limit point", &mut problems);
                force(&mut f.has_acc_point_from_above, false, "has_acc_point_from_above", "1 is the only limit point", &mut problems);
                match f.cardinality {
                    None => f.cardinality = Some(Cardinality::Countable),
                    Some(Cardinality::Countable) => {}
                    Some(other) => problems.push(format!("cardinality {other} contradicts a single limit point")),
                }
            }
            // in a closed set, 0 is a condensation point iff it lies in the perfect kernel
            if let Some(v) = f.zero_in_perfect_kernel {
                force(&mut f.every_nbhd_of_zero_uncountable, v, "every_nbhd_of_zero_uncountable", "it coincides with zero_in_perfect_kernel", &mut problems);
            }
            if let Some(v) = f.every_nbhd_of_zero_uncountable {
                force(&mut f.zero_in_perfect_kernel, v, "zero_in_perfect_kernel", "it coincides with every_nbhd_of_zero_uncountable", &mut problems);
                if v {
                    force(&mut f.zero_isolated, false, "zero_isolated", "every neighbourhood of 0 is uncountable", &mut problems);
                    match f.cardinality {
                        None => f.cardinality = Some(Cardinality::Uncountable),
                        Some(Cardinality::Uncountable) => {}
                        Some(other) => problems.push(format!("cardinality {other} contradicts an uncountable neighbourhood of 0")),
                    }
                }
            }
        }
        problems.sort();
        problems.dedup();
        if problems.is_empty() {
            Ok(f)
        } else {
            Err(TruthSetError::Inconsistent(problems))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoedelSetDescriptor {
    pub name: String,
    pub kind: SetKind,
    pub flags: Flags,
    pub with_delta: bool,
}

impl GoedelSetDescriptor {
    pub fn finite(values: Vec<Rat>) -> Result<Self, TruthSetError> {
        if values.first() != Some(&Rat::zero()) || values.last() != Some(&Rat::one()) {
            return Err(TruthSetError::InvalidValues("the list must start at 0 and end at 1".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TruthSetError::InvalidValues("the list must be strictly increasing".into()));
        }
        let name = format!("finite[{}]", values.iter().map(format_rat).collect::<Vec<_>>().join(","));
        Ok(GoedelSetDescriptor { name, kind: SetKind::Finite(values), flags: Flags::default(), with_delta: false }.derived())
    }

    /// V_m with its conventional name `Gm`.
    pub fn vm(m: usize) -> Self {
        let mut d = Self::finite(vm_values(m)).expect("V_m is well formed");
        d.name = format!("G{m}");
        d
    }

    pub fn vup() -> Self {
        Self::concrete("Gup", SetKind::VUp)
    }

    pub fn vdown() -> Self {
        Self::concrete("Gdown", SetKind::VDown)
    }

    pub fn unit_interval() -> Self {
        Self::concrete("G01", SetKind::UnitInterval)
    }

    pub fn abstract_set(name: &str, flags: Flags) -> Result<Self, TruthSetError> {
        let flags = flags.close()?;
        Ok(GoedelSetDescriptor { name: name.to_string(), kind: SetKind::Abstract, flags, with_delta: false })
    }

    fn concrete(name: &str, kind: SetKind) -> Self {
        GoedelSetDescriptor { name: name.to_string(), kind, flags: Flags::default(), with_delta: false }.derived()
    }

    fn derived(self) -> Self {
        derive_flags(&self).expect("concrete sets have consistent flags")
    }

    pub fn with_delta(mut self, on: bool) -> Self {
        self.with_delta = on;
        self
    }

    /// Built-in names: `G2`..`G9`, `Gup`, `Gdown`, `G01`, each optionally
    /// suffixed with `+D` to add the absoluteness operator.
    pub fn builtin(name: &str) -> Result<Self, TruthSetError> {
        let (base, delta) = match name.strip_suffix("+D") {
            Some(b) => (b, true),
            None => (name, false),
        };
        let d = match base {
            "Gup" => Self::vup(),
            "Gdown" => Self::vdown(),
            "G01" => Self::unit_interval(),
            _ => match base.strip_prefix('G').and_then(|m| m.parse::<usize>().ok()) {
                Some(m) if (2..=9).contains(&m) => Self::vm(m),
                _ => return Err(TruthSetError::UnknownBuiltin(name.to_string())),
            },
        };
        Ok(d.with_delta(delta))
    }

    pub fn cardinality(&self) -> Option<Cardinality> {
        self.flags.cardinality
    }

    pub fn finite_values(&self) -> Option<&[Rat]> {
        match &self.kind {
            SetKind::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Membership test. `None` for abstract descriptors.
    pub fn contains(&self, v: &Rat) -> Option<bool> {
        if *v < Rat::zero() || *v > Rat::one() {
            return Some(false);
        }
        Some(match &self.kind {
            SetKind::Finite(vals) => vals.contains(v),
            SetKind::VUp => v.is_one() || (Rat::one() - v).numer() == &1,
            SetKind::VDown => v.is_zero() || v.numer() == &1,
            SetKind::UnitInterval => true,
            SetKind::Abstract => return None,
        })
    }

    /// Flat `key = value` text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name = {}\n", self.name));
        let kind = match &self.kind {
            SetKind::Finite(_) => "finite",
            SetKind::VUp => "vup",
            SetKind::VDown => "vdown",
            SetKind::UnitInterval => "unit",
            SetKind::Abstract => "abstract",
        };
        out.push_str(&format!("kind = {kind}\n"));
        if let SetKind::Finite(vals) = &self.kind {
            out.push_str(&format!("values = {}\n", vals.iter().map(format_rat).collect::<Vec<_>>().join(", ")));
        }
        if let Some(c) = self.flags.cardinality {
            out.push_str(&format!("flags.cardinality = {c}\n"));
        }
        for (name, v) in self.flags.bools() {
            if let Some(v) = v {
                out.push_str(&format!("flags.{name} = {v}\n"));
            }
        }
        out.push_str(&format!("flags.with_delta = {}\n", self.with_delta));
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, TruthSetError> {
        let mut name = None;
        let mut kind = None;
        let mut values = None;
        let mut flags = Flags::default();
        let mut with_delta = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TruthSetError::Format { line: i + 1, message };
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected 'key = value'".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let parse_bool = |v: &str| match v {
                "true" | "yes" => Ok(true),
                "false" | "no" => Ok(false),
                _ => Err(err(format!("expected true or false, found '{v}'"))),
            };
            match key {
                "name" => name = Some(value.to_string()),
                "kind" => kind = Some(value.to_string()),
                "values" => {
                    let vals: Result<Vec<Rat>, _> = value.split(',').map(parse_rat).collect();
                    values = Some(vals?);
                }
                "flags.cardinality" => {
                    flags.cardinality = Some(match value {
                        "countable" => Cardinality::Countable,
                        "uncountable" => Cardinality::Uncountable,
                        v => match v.strip_prefix("finite(").and_then(|r| r.strip_suffix(')')).and_then(|n| n.parse().ok()) {
                            Some(n) => Cardinality::Finite(n),
                            None => return Err(err(format!("unknown cardinality '{v}'"))),
                        },
                    })
                }
                "flags.with_delta" => with_delta = parse_bool(value)?,
                k => match k.strip_prefix("flags.").and_then(|f| flags.bool_mut(f)) {
                    Some(slot) => *slot = Some(parse_bool(value)?),
                    None => return Err(err(format!("unknown key '{k}'"))),
                },
            }
        }
        let kind = kind.ok_or(TruthSetError::Format { line: 0, message: "missing 'kind'".into() })?;
        let mut d = match kind.as_str() {
            "finite" => Self::finite(values.ok_or(TruthSetError::Format { line: 0, message: "finite sets need 'values'".into() })?)?,
            "vup" => Self::vup(),
            "vdown" => Self::vdown(),
            "unit" => Self::unit_interval(),
            "abstract" => Self::abstract_set("abstract", flags.clone())?,
            other => return Err(TruthSetError::Format { line: 0, message: format!("unknown kind '{other}'") }),
        };
        if d.kind != SetKind::Abstract {
            // asserted flags on a concrete set must agree with the derived ones
            for ((fname, v), (_, derived)) in flags.bools().into_iter().zip(d.flags.bools()) {
                if v.is_some() && v != derived {
                    return Err(TruthSetError::Inconsistent(vec![format!("{fname} contradicts the {kind} set")]));
                }
            }
            if flags.cardinality.is_some() && flags.cardinality != d.flags.cardinality {
                return Err(TruthSetError::Inconsistent(vec![format!("cardinality contradicts the {kind} set")]));
            }
        }
        if let Some(n) = name {
            d.name = n;
        }
        Ok(d.with_delta(with_delta))
    }
}

/// Computes every flag of a concrete set. For abstract descriptors the known
/// flags are checked for consistency and closed under their implications.
pub fn derive_flags(d: &GoedelSetDescriptor) -> Result<GoedelSetDescriptor, TruthSetError> {
    let flags = match &d.kind {
        SetKind::Finite(v) => Flags::complete(Cardinality::Finite(v.len()), true, false, false, false, false),
        SetKind::VUp => Flags::complete(Cardinality::Countable, true, false, true, false, false),
        SetKind::VDown => Flags::complete(Cardinality::Countable, false, true, false, false, false),
        SetKind::UnitInterval => Flags::complete(Cardinality::Uncountable, false, true, false, true, true),
        SetKind::Abstract => d.flags.close()?,
    };
    Ok(GoedelSetDescriptor { flags, ..d.clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ternary {
    Yes,
    No,
    Open,
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ternary::Yes => "yes",
            Ternary::No => "no",
            Ternary::Open => "open",
        })
    }
}

/// The row of the classification tables a set falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetClass {
    Finite,
    GUp,
    CountableOther,
    UncountableZeroIsolated,
    UncountableZeroInKernel,
    UncountableZeroOutsideKernel,
}

impl SetClass {
    pub fn label(self) -> &'static str {
        match self {
            SetClass::Finite => "finite",
            SetClass::GUp => "g-up",
            SetClass::CountableOther => "countable-without-gup",
            SetClass::UncountableZeroIsolated => "uncountable-zero-isolated",
            SetClass::UncountableZeroInKernel => "uncountable-zero-in-perfect-kernel",
            SetClass::UncountableZeroOutsideKernel => "uncountable-zero-not-in-perfect-kernel",
        }
    }

    pub fn is_uncountable(self) -> bool {
        matches!(self, SetClass::UncountableZeroIsolated | SetClass::UncountableZeroInKernel | SetClass::UncountableZeroOutsideKernel)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShiftFamily {
    S1,
    S2,
    S3,
    DeltaForall,
    DeltaExists,
}

impl fmt::Display for ShiftFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftFamily::S1 => "S1",
            ShiftFamily::S2 => "S2",
            ShiftFamily::S3 => "S3",
            ShiftFamily::DeltaForall => "D-forall",
            ShiftFamily::DeltaExists => "D-exists",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub set_name: String,
    pub class: SetClass,
    pub with_delta: bool,
    pub logical_prenex: bool,
    pub logical_prenex_with_delta: bool,
    pub pos_valid_prenex: bool,
    pub pos_valid_prenex_with_delta: bool,
    pub validity_equiv_prenex: Ternary,
    pub validity_equiv_prenex_with_delta: Ternary,
    pub logic_recursively_enumerable: bool,
    pub prenex_fragment_recursively_enumerable: Ternary,
    pub shift_rules_available: BTreeSet<ShiftFamily>,
    pub notes: Vec<String>,
}

impl Classification {
    /// Logical prenex availability for the language the set was declared with.
    pub fn admits_logical_prenex(&self, formula_has_delta: bool) -> bool {
        if formula_has_delta {
            self.logical_prenex_with_delta
        } else {
            self.logical_prenex
        }
    }

    pub fn has_shift(&self, s: ShiftFamily) -> bool {
        self.shift_rules_available.contains(&s)
    }

    pub fn report(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let shifts: Vec<String> = self.shift_rules_available.iter().map(|s| s.to_string()).collect();
        let mut out = format!(
            "set={} class={} delta={}\n\
             table1 logical_prenex={} logical_prenex_with_delta={} pos_valid_prenex={} pos_valid_prenex_with_delta={}\n\
             table2 validity_equiv_prenex={} validity_equiv_prenex_with_delta={}\n\
             re logic={} prenex_fragment={}\n\
             shifts={}\n",
            self.set_name,
            self.class.label(),
            yn(self.with_delta),
            yn(self.logical_prenex),
            yn(self.logical_prenex_with_delta),
            yn(self.pos_valid_prenex),
            yn(self.pos_valid_prenex_with_delta),
            self.validity_equiv_prenex,
            self.validity_equiv_prenex_with_delta,
            yn(self.logic_recursively_enumerable),
            self.prenex_fragment_recursively_enumerable,
            shifts.join(","),
        );
        for n in &self.notes {
            out.push_str(&format!("note={n}\n"));
        }
        out
    }
}

fn set_class(d: &GoedelSetDescriptor) -> Result<SetClass, TruthSetError> {
    let f = &d.flags;
    let mut missing = Vec::new();
    let card = match f.cardinality {
        Some(c) => c,
        None => {
            missing.push(FLAG_NAMES[0].to_string());
            Cardinality::Countable
        }
    };
    let need = |v: Option<bool>, name: &str, missing: &mut Vec<String>| {
        if v.is_none() {
            missing.push(name.to_string());
        }
        v.unwrap_or(false)
    };
    let class = match card {
        Cardinality::Finite(_) => SetClass::Finite,
        Cardinality::Countable => {
            let zi = need(f.zero_isolated, FLAG_NAMES[1], &mut missing);
            let only = need(f.only_acc_point_is_one_from_below, FLAG_NAMES[3], &mut missing);
            if zi && only {
                SetClass::GUp
            } else {
                SetClass::CountableOther
            }
        }
        Cardinality::Uncountable => {
            let zi = need(f.zero_isolated, FLAG_NAMES[1], &mut missing);
            if zi {
                SetClass::UncountableZeroIsolated
            } else if need(f.zero_in_perfect_kernel, FLAG_NAMES[5], &mut missing) {
                SetClass::UncountableZeroInKernel
            } else {
                SetClass::UncountableZeroOutsideKernel
            }
        }
    };
    if missing.is_empty() {
        Ok(class)
    } else {
        Err(TruthSetError::MissingFlags(missing))
    }
}

pub fn classify(d: &GoedelSetDescriptor) -> Result<Classification, TruthSetError> {
    let d = derive_flags(d)?;
    let class = set_class(&d)?;
    use SetClass::*;
    let (lp, lpd, pv, pvd) = match class {
        Finite => (true, true, true, true),
        GUp => (true, false, true, false),
        CountableOther => (false, false, false, false),
        UncountableZeroIsolated => (false, false, true, false),
        UncountableZeroInKernel | UncountableZeroOutsideKernel => (false, false, false, false),
    };
    let (ve, ved) = match class {
        Finite | UncountableZeroIsolated | UncountableZeroInKernel => (Ternary::Yes, Ternary::Yes),
        UncountableZeroOutsideKernel => (Ternary::No, Ternary::No),
        // logically equivalent prenex forms are in particular validity equivalent
        GUp => (Ternary::Yes, Ternary::Open),
        CountableOther => (Ternary::Open, Ternary::Open),
    };
    let logic_re = matches!(class, Finite | UncountableZeroIsolated | UncountableZeroInKernel);
    let fragment_re = match class {
        Finite => Ternary::Yes,
        c if c.is_uncountable() => Ternary::Yes,
        GUp => Ternary::No,
        _ => Ternary::Open,
    };
    let mut shifts = BTreeSet::from([ShiftFamily::S1]);
    if matches!(class, Finite | GUp) {
        shifts.extend([ShiftFamily::S2, ShiftFamily::S3]);
    }
    if class == Finite {
        shifts.extend([ShiftFamily::DeltaForall, ShiftFamily::DeltaExists]);
    }
    let mut notes = Vec::new();
    if class.is_uncountable() {
        notes.push("validity_equiv_prenex_with_delta is underdetermined; it repeats the delta-free column".to_string());
    }
    if class == GUp {
        notes.push("logical prenex forms are validity equivalent; the delta column is open".to_string());
    }
    Ok(Classification {
        set_name: d.name.clone(),
        class,
        with_delta: d.with_delta,
        logical_prenex: lp,
        logical_prenex_with_delta: lpd,
        pos_valid_prenex: pv,
        pos_valid_prenex_with_delta: pvd,
        validity_equiv_prenex: ve,
        validity_equiv_prenex_with_delta: ved,
        logic_recursively_enumerable: logic_re,
        prenex_fragment_recursively_enumerable: fragment_re,
        shift_rules_available: shifts,
        notes,
    })
}

/// The reference descriptors covering every table row.
pub fn fixture_descriptors() -> Vec<GoedelSetDescriptor> {
    let outside_kernel = Flags {
        cardinality: Some(Cardinality::Uncountable),
        zero_isolated: Some(false),
        zero_in_perfect_kernel: Some(false),
        ..Flags::default()
    };
    let zero_isolated = Flags { cardinality: Some(Cardinality::Uncountable), zero_isolated: Some(true), ..Flags::default() };
    vec![
        GoedelSetDescriptor::vm(3),
        GoedelSetDescriptor::vup(),
        GoedelSetDescriptor::vdown(),
        GoedelSetDescriptor::unit_interval(),
        GoedelSetDescriptor::abstract_set("uncountable-zero-outside-kernel", outside_kernel).expect("consistent"),
        GoedelSetDescriptor::abstract_set("uncountable-zero-isolated", zero_isolated).expect("consistent"),
    ]
}
