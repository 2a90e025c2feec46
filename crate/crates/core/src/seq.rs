//! Sequences of truth values indexed by ℕ, given by finitely many explicit
//! values and the closed form α + β/(n+γ) everywhere else.
//!
//! Pointwise combinations of two such sequences are again of this shape: past
//! a computable index the comparison between two closed forms has a fixed
//! sign, so the tail of the result is one of the operands or a constant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::value::{format_rat, parse_rat, Rat, ValueError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("malformed sequence '{0}' (expected 'a + b/(n+c)')")]
    Malformed(String),
    #[error("gamma must be positive in '{0}'")]
    Gamma(String),
    #[error(transparent)]
    Value(#[from] ValueError),
}

/// `value(n) = overrides[n]` if present, else `alpha + beta/(n+gamma)`.
///
/// Every index `n` with `n + gamma <= 0` carries an override.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeqValue {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub overrides: BTreeMap<u64, Rat>,
}

/// An infimum or supremum together with whether some index attains it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremum {
    pub value: Rat,
    pub attained: bool,
}

/// What the combined sequence looks like past the threshold.
#[derive(Debug, Clone, Copy)]
pub enum Tail {
    Left,
    Right,
    Const(Rat),
}

fn big(r: &Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn big_ceil_u64(r: &BigRational) -> u64 {
    if r.is_negative() {
        0
    } else {
        r.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
    }
}

impl SeqValue {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat) -> SeqValue {
        assert!(gamma > Rat::zero(), "gamma must be positive");
        SeqValue { alpha, beta, gamma, overrides: BTreeMap::new() }.canonical()
    }

    pub fn constant(v: Rat) -> SeqValue {
        SeqValue { alpha: v, beta: Rat::zero(), gamma: Rat::one(), overrides: BTreeMap::new() }
    }

    pub fn with_override(mut self, n: u64, v: Rat) -> SeqValue {
        self.overrides.insert(n, v);
        self.canonical()
    }

    /// The closed form alone, ignoring overrides. `None` where it is undefined.
    pub fn closed(&self, n: u64) -> Option<Rat> {
        if self.beta.is_zero() {
            return Some(self.alpha);
        }
        let d = Rat::from_integer(n as i64) + self.gamma;
        if d <= Rat::zero() {
            None
        } else {
            Some(self.alpha + self.beta / d)
        }
    }

    pub fn value(&self, n: u64) -> Rat {
        match self.overrides.get(&n) {
            Some(v) => *v,
            None => self.closed(n).expect("indices without a closed form carry overrides"),
        }
    }

    pub fn is_constant(&self) -> Option<Rat> {
        if self.beta.is_zero() && self.overrides.values().all(|v| *v == self.alpha) {
            Some(self.alpha)
        } else {
            None
        }
    }

    /// Smallest index from which the closed form is used unconditionally.
    pub fn tail_start(&self) -> u64 {
        let after_overrides = self.overrides.keys().next_back().map_or(0, |k| k + 1);
        let positive = if self.beta.is_zero() { 0 } else { big_ceil_u64(&(-big(&self.gamma) + BigRational::one())) };
        after_overrides.max(positive)
    }

    /// Drops overrides that coincide with the closed form and normalizes γ for
    /// eventually constant sequences, so that equal sequences compare equal.
    pub fn canonical(mut self) -> SeqValue {
        if self.beta.is_zero() {
            self.gamma = Rat::one();
        }
        let closed: Vec<(u64, Option<Rat>)> = self.overrides.keys().map(|&n| (n, self.closed(n))).collect();
        for (n, c) in closed {
            if c.as_ref() == self.overrides.get(&n) {
                self.overrides.remove(&n);
            }
        }
        self
    }

    /// The sequence n ↦ self(n + k), reading self(0) for negative indices.
    pub fn shifted(&self, k: i64) -> SeqValue {
        let mut out = SeqValue {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma + Rat::from_integer(k),
            overrides: BTreeMap::new(),
        };
        if self.beta.is_zero() {
            out.gamma = Rat::one();
        }
        for (&m, &v) in &self.overrides {
            let n = m as i64 - k;
            if n >= 0 {
                out.overrides.insert(n as u64, v);
            }
        }
        if k < 0 {
            let first = self.value(0);
            for n in 0..(-k) as u64 {
                out.overrides.insert(n, first);
            }
        }
        out.canonical()
    }

    /// Eventual order of the two closed forms and an index from which that
    /// order holds at every n (both closed forms defined, overrides passed).
    pub fn eventual_cmp(&self, other: &SeqValue) -> (Ordering, u64) {
        let (a1, b1, g1) = (big(&self.alpha), big(&self.beta), big(&self.gamma));
        let (a2, b2, g2) = (big(&other.alpha), big(&other.beta), big(&other.gamma));
        // (n+g1)(n+g2)(self(n) - other(n)) = A n^2 + B n + C
        let a = &a1 - &a2;
        let b = &a * (&g1 + &g2) + &b1 - &b2;
        let c = &a * &g1 * &g2 + &b1 * &g2 - &b2 * &g1;
        let sign = |x: &BigRational| {
            if x.is_positive() {
                Ordering::Greater
            } else if x.is_negative() {
                Ordering::Less
            } else {
                Ordering::Equal
            }
        };
        let (ord, bound) = if !a.is_zero() {
            let m = if b.abs() > c.abs() { b.abs() } else { c.abs() };
            (sign(&a), BigRational::one() + m / a.abs())
        } else if !b.is_zero() {
            (sign(&b), c.abs() / b.abs())
        } else {
            (sign(&c), BigRational::zero())
        };
        let from_roots = big_ceil_u64(&bound) + 1;
        let start = from_roots.max(self.tail_start()).max(other.tail_start());
        (ord, start)
    }

    /// Pointwise combination. `f` is applied literally below the threshold,
    /// `tail` picks the closed form used beyond it from the eventual order.
    pub fn zip_with(
        &self,
        other: &SeqValue,
        f: impl Fn(Rat, Rat) -> Rat,
        tail: impl Fn(Ordering) -> Tail,
    ) -> SeqValue {
        let (ord, start) = self.eventual_cmp(other);
        let mut out = match tail(ord) {
            Tail::Left => SeqValue { overrides: BTreeMap::new(), ..self.clone() },
            Tail::Right => SeqValue { overrides: BTreeMap::new(), ..other.clone() },
            Tail::Const(v) => SeqValue::constant(v),
        };
        for n in 0..start {
            out.overrides.insert(n, f(self.value(n), other.value(n)));
        }
        out.canonical()
    }

    pub fn min(&self, other: &SeqValue) -> SeqValue {
        self.zip_with(other, |x, y| x.min(y), |o| if o == Ordering::Greater { Tail::Right } else { Tail::Left })
    }

    pub fn max(&self, other: &SeqValue) -> SeqValue {
        self.zip_with(other, |x, y| x.max(y), |o| if o == Ordering::Less { Tail::Right } else { Tail::Left })
    }

    /// Gödel conditional self ⊃ other.
    pub fn imp(&self, other: &SeqValue) -> SeqValue {
        self.zip_with(
            other,
            |x, y| if x <= y { Rat::one() } else { y },
            |o| if o == Ordering::Greater { Tail::Right } else { Tail::Const(Rat::one()) },
        )
    }

    pub fn delta(&self) -> SeqValue {
        self.zip_with(
            &SeqValue::constant(Rat::one()),
            |x, _| if x == Rat::one() { Rat::one() } else { Rat::zero() },
            |o| Tail::Const(if o == Ordering::Equal { Rat::one() } else { Rat::zero() }),
        )
    }

    /// Pointwise gluing at ω: values above ω become 1.
    pub fn glue(&self, omega: Rat) -> SeqValue {
        self.zip_with(
            &SeqValue::constant(omega),
            |x, w| if x <= w { x } else { Rat::one() },
            |o| if o == Ordering::Greater { Tail::Const(Rat::one()) } else { Tail::Left },
        )
    }

    fn tail_extremes(&self) -> Option<(Extremum, Extremum)> {
        let start = self.tail_start();
        let first = (start..).find(|n| !self.overrides.contains_key(n))?;
        let v = self.closed(first)?;
        let limit = Extremum { value: self.alpha, attained: false };
        let at_first = Extremum { value: v, attained: true };
        Some(match self.beta.cmp(&Rat::zero()) {
            Ordering::Equal => (limit_attained(self.alpha), limit_attained(self.alpha)),
            Ordering::Greater => (limit, at_first),
            Ordering::Less => (at_first, limit),
        })
    }

    fn extremum(&self, lower: bool) -> Extremum {
        let (inf_t, sup_t) = self.tail_extremes().expect("closed form is used at infinitely many indices");
        let mut best = if lower { inf_t } else { sup_t };
        // closed-form values between the overrides, below the tail start
        let start = self.tail_start();
        let prefix = (0..start).filter(|n| !self.overrides.contains_key(n)).filter_map(|n| self.closed(n));
        for v in self.overrides.values().copied().chain(prefix) {
            let better = if lower { v < best.value } else { v > best.value };
            if better {
                best = Extremum { value: v, attained: true };
            } else if v == best.value {
                best.attained = true;
            }
        }
        best
    }

    pub fn inf(&self) -> Extremum {
        self.extremum(true)
    }

    pub fn sup(&self) -> Extremum {
        self.extremum(false)
    }

    /// Limit points of the sequence approached strictly from above or below.
    pub fn limit(&self) -> Option<(Rat, Ordering)> {
        match self.beta.cmp(&Rat::zero()) {
            Ordering::Equal => None,
            o => Some((self.alpha, o)),
        }
    }

    /// Every value the sequence takes, as a finite list of explicit values
    /// plus the closed-form family. Explicit values are sorted and deduplicated.
    pub fn explicit_values(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.overrides.values().copied().collect();
        if self.beta.is_zero() {
            v.push(self.alpha);
        }
        v.sort();
        v.dedup();
        v
    }

    /// Checks that every value lies in [0,1].
    pub fn in_unit_interval(&self) -> bool {
        let ok = |v: &Rat| *v >= Rat::zero() && *v <= Rat::one();
        let inf = self.inf().value;
        let sup = self.sup().value;
        ok(&inf) && ok(&sup)
    }

    /// Parses `a + b/(n+c)`, `a - b/(n+c)`, `b/(n+c)` or a constant. Fractional
    /// coefficients are parenthesized: `1/2 + (1/4)/(n+3)`.
    pub fn parse_closed_form(text: &str) -> Result<SeqValue, SeqError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || SeqError::Malformed(text.trim().to_string());
        let Some(split) = s.find("/(n") else {
            return Ok(SeqValue::constant(parse_rat(&s)?));
        };
        let (head, rest) = (&s[..split], &s[split + 3..]);
        let gamma_text = rest.strip_suffix(')').ok_or_else(bad)?;
        let gamma = match gamma_text.strip_prefix('+') {
            Some(g) => parse_rat(g)?,
            None if gamma_text.starts_with('-') => parse_rat(gamma_text)?,
            None if gamma_text.is_empty() => Rat::zero(),
            None => return Err(bad()),
        };
        if gamma <= Rat::zero() {
            return Err(SeqError::Gamma(text.trim().to_string()));
        }
        let mut depth = 0i32;
        let mut cut = None;
        for (i, c) in head.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > 0 => cut = Some(i),
                _ => {}
            }
        }
        let (alpha, beta_text) = match cut {
            Some(i) => (parse_rat(&head[..i])?, &head[i..]),
            None => (Rat::zero(), head),
        };
        let (neg, beta_text) = match beta_text.chars().next() {
            Some('-') => (true, &beta_text[1..]),
            Some('+') => (false, &beta_text[1..]),
            _ => (false, beta_text),
        };
        let inner = beta_text.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(beta_text);
        if inner.contains('/') && inner.len() == beta_text.len() {
            return Err(bad());
        }
        let beta = parse_rat(inner)?;
        Ok(SeqValue::new(alpha, if neg { -beta } else { beta }, gamma))
    }

    /// The closed form in the syntax accepted by [`SeqValue::parse_closed_form`].
    pub fn closed_form_text(&self) -> String {
        if self.beta.is_zero() {
            return format_rat(&self.alpha);
        }
        let coef = |r: &Rat| if r.is_integer() { format_rat(r) } else { format!("({})", format_rat(r)) };
        let sign = if self.beta < Rat::zero() { "-" } else { "+" };
        let g = format_rat(&self.gamma);
        format!("{} {} {}/(n+{})", format_rat(&self.alpha), sign, coef(&self.beta.abs()), g)
    }
}

fn limit_attained(v: Rat) -> Extremum {
    Extremum { value: v, attained: true }
}

impl fmt::Display for SeqValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.closed_form_text())?;
        for (n, v) in &self.overrides {
            write!(f, "; {n} -> {}", format_rat(v))?;
        }
        Ok(())
    }
}
