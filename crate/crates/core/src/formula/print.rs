//! Pretty printer producing text accepted by [`super::parse`].

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintMode {
    /// Minimal parentheses, restoring `~`, `<->` and `<` where the structure matches.
    Sugar,
    /// Every binary connective parenthesized, no abbreviations.
    Raw,
}

const IMPL: u8 = 0;
const DISJ: u8 = 1;
const CONJ: u8 = 2;
const UNARY: u8 = 3;

pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    sugar(f, IMPL, &mut out);
    out
}

pub fn print_raw(f: &Formula) -> String {
    let mut out = String::new();
    raw(f, &mut out);
    out
}

pub fn print_with(f: &Formula, mode: PrintMode) -> String {
    match mode {
        PrintMode::Sugar => print(f),
        PrintMode::Raw => print_raw(f),
    }
}

fn atom_text(f: &Formula, out: &mut String) {
    match f {
        Formula::Bottom => out.push_str("bot"),
        Formula::Top => out.push_str("top"),
        Formula::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&a.to_string());
                }
                out.push(')');
            }
        }
        _ => unreachable!("not an atom"),
    }
}

fn as_not(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Implies(a, b) if **b == Formula::Bottom => Some(a),
        _ => None,
    }
}

fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::And(l, r) => match (&**l, &**r) {
            (Formula::Implies(a, b), Formula::Implies(c, d)) if a == d && b == c => Some((a, b)),
            _ => None,
        },
        _ => None,
    }
}

fn as_less(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Implies(l, r) => match &**l {
            Formula::Implies(a, b) if a == r => Some((a, b)),
            _ => None,
        },
        _ => None,
    }
}

fn sugar(f: &Formula, ctx: u8, out: &mut String) {
    if let Some(a) = as_not(f) {
        out.push('~');
        sugar(a, UNARY, out);
        return;
    }
    if let Some((a, b)) = as_iff(f) {
        out.push('(');
        sugar(a, IMPL, out);
        out.push_str(" <-> ");
        sugar(b, IMPL, out);
        out.push(')');
        return;
    }
    if let Some((a, b)) = as_less(f) {
        out.push('(');
        sugar(a, IMPL, out);
        out.push_str(" < ");
        sugar(b, IMPL, out);
        out.push(')');
        return;
    }
    let open = match f {
        Formula::Implies(..) => ctx > IMPL,
        Formula::Or(..) => ctx > DISJ,
        Formula::And(..) => ctx > CONJ,
        _ => false,
    };
    if open {
        out.push('(');
    }
    match f {
        Formula::Bottom | Formula::Top | Formula::Atom(..) => atom_text(f, out),
        Formula::Implies(a, b) => {
            sugar(a, DISJ, out);
            out.push_str(" -> ");
            sugar(b, IMPL, out);
        }
        Formula::Or(a, b) => {
            sugar(a, DISJ, out);
            out.push_str(" | ");
            sugar(b, CONJ, out);
        }
        Formula::And(a, b) => {
            sugar(a, CONJ, out);
            out.push_str(" & ");
            sugar(b, UNARY, out);
        }
        Formula::Delta(a) => {
            out.push_str("D ");
            sugar(a, UNARY, out);
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "A " } else { "E " });
            out.push_str(v);
            out.push_str(". ");
            sugar(a, UNARY, out);
        }
    }
    if open {
        out.push(')');
    }
}

fn raw(f: &Formula, out: &mut String) {
    let bin = |a: &Formula, op: &str, b: &Formula, out: &mut String| {
        out.push('(');
        raw(a, out);
        out.push_str(op);
        raw(b, out);
        out.push(')');
    };
    match f {
        Formula::Bottom | Formula::Top | Formula::Atom(..) => atom_text(f, out),
        Formula::And(a, b) => bin(a, " & ", b, out),
        Formula::Or(a, b) => bin(a, " | ", b, out),
        Formula::Implies(a, b) => bin(a, " -> ", b, out),
        Formula::Delta(a) => {
            out.push_str("D ");
            raw(a, out);
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "A " } else { "E " });
            out.push_str(v);
            out.push_str(". ");
            raw(a, out);
        }
    }
}
