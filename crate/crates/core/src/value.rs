//! Exact truth values and their textual form.

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rat = Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("malformed rational '{0}' (expected p/q or an integer)")]
    Malformed(String),
    #[error("decimal literal '{0}' rejected; write it as p/q")]
    Decimal(String),
    #[error("zero denominator in '{0}'")]
    ZeroDenominator(String),
    #[error("value {0} outside [0,1]")]
    OutOfRange(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `p/q`, `-p/q` or an integer.
pub fn parse_rat(text: &str) -> Result<Rat, ValueError> {
    let s = text.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(ValueError::Decimal(s.to_string()));
    }
    let parse_int = |t: &str| -> Result<i64, ValueError> {
        let t = t.trim();
        if t.is_empty() || !t.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
            return Err(ValueError::Malformed(s.to_string()));
        }
        t.parse::<i64>().map_err(|_| ValueError::Malformed(s.to_string()))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if d == 0 {
                return Err(ValueError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Like [`parse_rat`] but insists on a value in [0,1].
pub fn parse_truth(text: &str) -> Result<Rat, ValueError> {
    let v = parse_rat(text)?;
    if v < zero() || v > one() {
        return Err(ValueError::OutOfRange(format_rat(&v)));
    }
    Ok(v)
}

/// `p/q` in lowest terms, or the bare integer.
pub fn format_rat(v: &Rat) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// The m-element set {0, 1/(m-1), ..., 1}.
pub fn uniform_values(m: usize) -> Vec<Rat> {
    assert!(m >= 2, "a truth set has at least two values");
    let d = (m - 1) as i64;
    (0..=d).map(|i| rat(i, d)).collect()
}

/// V_m = {0, 1/2, 2/3, ..., 1 - 1/(m-1), 1}.
pub fn vm_values(m: usize) -> Vec<Rat> {
    assert!(m >= 2, "a truth set has at least two values");
    let mut out: Vec<Rat> = (1..m as i64).map(|k| one() - rat(1, k)).collect();
    out.push(one());
    out
}
