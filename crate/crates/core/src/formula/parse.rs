//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := impl
//! impl    := disj ("->" impl)?
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | "D" unary | "A" var "." unary | "E" var "." unary | atom
//! atom    := "bot" | "top" | ident ("(" term ("," term)* ")")?
//!          | "(" formula ")" | "(" formula ("<" | "<->") formula ")"
//! term    := ident ("(" term ("," term)* ")")? | ident "(" ")"
//! ```
//!
//! `A` and `E` act as quantifiers only when followed by a variable and a dot,
//! so `A(x)` and `A -> B` still parse as atoms. `D`, `bot` and `top` are
//! reserved.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Emitted for variables that occur free in the parsed formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub var: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    Less,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Tok::Ident(chars[start..j].iter().collect()), j - start)
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Arrow, 2)
            } else {
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    '~' => Tok::Tilde,
                    '&' => Tok::Amp,
                    '|' => Tok::Bar,
                    '<' => Tok::Less,
                    other => return Err(err(l0, c0, format!("unexpected character '{other}'"))),
                };
                (t, 1)
            }
        };
        out.push(Spanned { tok, line: l0, column: c0 });
        i += len;
        col += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

const RESERVED: [&str; 3] = ["D", "bot", "top"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    bound: Vec<String>,
    warnings: Vec<ParseWarning>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError { line: t.line, column: t.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.conj()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn is_quantifier_start(&self) -> bool {
        matches!(self.peek(), Tok::Ident(q) if q == "A" || q == "E")
            && matches!(self.peek_at(1), Tok::Ident(_))
            && *self.peek_at(2) == Tok::Dot
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(d) if d == "D" => {
                self.bump();
                Ok(Formula::delta(self.unary()?))
            }
            Tok::Ident(q) if self.is_quantifier_start() => {
                self.bump();
                let var = match self.bump().tok {
                    Tok::Ident(v) => v,
                    _ => unreachable!(),
                };
                if RESERVED.contains(&var.as_str()) {
                    self.pos -= 1;
                    return self.error(format!("'{var}' is reserved and cannot be a variable"));
                }
                self.expect(Tok::Dot, "'.'")?;
                self.bound.push(var.clone());
                let body = self.unary();
                self.bound.pop();
                let body = body?;
                Ok(if q == "A" { Formula::forall(&var, body) } else { Formula::exists(&var, body) })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                match name.as_str() {
                    "bot" => {
                        self.bump();
                        return Ok(Formula::Bottom);
                    }
                    "top" => {
                        self.bump();
                        return Ok(Formula::Top);
                    }
                    "D" => return self.error("'D' is reserved"),
                    _ => {}
                }
                self.bump();
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    let args = self.term_list()?;
                    if args.is_empty() {
                        return self.error("a predicate needs at least one argument inside parentheses");
                    }
                    args
                } else {
                    Vec::new()
                };
                Ok(Formula::Atom(name, args))
            }
            Tok::LParen => {
                self.bump();
                let lhs = self.formula()?;
                let out = match self.peek() {
                    Tok::Less => {
                        self.bump();
                        let rhs = self.formula()?;
                        Formula::less(lhs, rhs)
                    }
                    Tok::Iff => {
                        self.bump();
                        let rhs = self.formula()?;
                        Formula::iff(lhs, rhs)
                    }
                    _ => lhs,
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(out)
            }
            other => self.error(format!("expected a formula, found {}", describe(&other))),
        }
    }

    /// Parses the arguments after an opening parenthesis, consuming the closing one.
    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                other => return self.error(format!("expected ',' or ')', found {}", describe(other))),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let t = self.toks[self.pos].clone();
        let name = match &t.tok {
            Tok::Ident(n) if !RESERVED.contains(&n.as_str()) => n.clone(),
            other => return self.error(format!("expected a term, found {}", describe(other))),
        };
        self.bump();
        if *self.peek() == Tok::LParen {
            self.bump();
            let args = self.term_list()?;
            return Ok(if args.is_empty() { Term::Const(name) } else { Term::App(name, args) });
        }
        if !self.bound.contains(&name) {
            self.warnings.push(ParseWarning { var: name.clone(), line: t.line, column: t.column });
        }
        Ok(Term::Var(name))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Dot => "'.'".into(),
        Tok::Tilde => "'~'".into(),
        Tok::Amp => "'&'".into(),
        Tok::Bar => "'|'".into(),
        Tok::Arrow => "'->'".into(),
        Tok::Iff => "'<->'".into(),
        Tok::Less => "'<'".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a formula, also returning one warning per free variable occurrence.
pub fn parse_with_warnings(text: &str) -> Result<(Formula, Vec<ParseWarning>), ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, bound: Vec::new(), warnings: Vec::new() };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after formula", describe(p.peek())));
    }
    if let Err(clashes) = f.check_arities() {
        return Err(ParseError { line: 1, column: 1, message: format!("inconsistent arity for symbol(s) {}", clashes.join(", ")) });
    }
    let mut seen = BTreeSet::new();
    p.warnings.retain(|w| seen.insert(w.var.clone()));
    Ok((f, p.warnings))
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with_warnings(text).map(|(f, _)| f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantifier_scope_is_unary() {
        let f = parse("A x. (P(x) | B)").unwrap();
        assert_eq!(f, Formula::forall("x", Formula::or(Formula::pred1("P", "x"), Formula::prop("B"))));
        let g = parse("A x. P(x) | B").unwrap();
        assert_eq!(g, Formula::or(Formula::forall("x", Formula::pred1("P", "x")), Formula::prop("B")));
    }

    #[test]
    fn negation_is_implication_to_bottom() {
        assert_eq!(parse("~P").unwrap(), Formula::implies(Formula::prop("P"), Formula::Bottom));
    }

    #[test]
    fn less_abbreviation() {
        let (p, q) = (Formula::prop("P"), Formula::prop("Q"));
        assert_eq!(parse("(P < Q)").unwrap(), Formula::implies(Formula::implies(p.clone(), q), p));
    }

    #[test]
    fn iff_abbreviation() {
        let (p, q) = (Formula::prop("P"), Formula::prop("Q"));
        assert_eq!(parse("(P <-> Q)").unwrap(), Formula::iff(p, q));
    }

    #[test]
    fn implication_is_right_associative() {
        let (p, q, r) = (Formula::prop("P"), Formula::prop("Q"), Formula::prop("R"));
        assert_eq!(parse("P -> Q -> R").unwrap(), Formula::implies(p, Formula::implies(q, r)));
    }

    #[test]
    fn precedence_levels() {
        let f = parse("~P & Q | R -> S").unwrap();
        let expected = Formula::implies(
            Formula::or(Formula::and(Formula::not(Formula::prop("P")), Formula::prop("Q")), Formula::prop("R")),
            Formula::prop("S"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn soft_quantifier_keywords() {
        let f = parse("(A -> B) | (B -> A)").unwrap();
        assert_eq!(f.prop_atoms(), vec!["A".to_string(), "B".to_string()]);
        let g = parse("E x. A(x)").unwrap();
        assert_eq!(g, Formula::exists("x", Formula::pred1("A", "x")));
    }

    #[test]
    fn delta_and_constants() {
        assert_eq!(parse("D P").unwrap(), Formula::delta(Formula::prop("P")));
        let f = parse("P(c(), f(x))").unwrap();
        assert_eq!(
            f,
            Formula::Atom("P".into(), vec![Term::Const("c".into()), Term::App("f".into(), vec![Term::var("x")])])
        );
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse("A x.(P(x)|B)").unwrap(), parse(" A  x .\n ( P ( x ) | B ) ").unwrap());
    }

    #[test]
    fn error_positions() {
        let e = parse("P &\n  & Q").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("P $ Q").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(parse("(P < Q").is_err());
        assert!(parse("P Q").is_err());
        assert!(parse("D").is_err());
    }

    #[test]
    fn free_variable_warnings() {
        let (_, w) = parse_with_warnings("A x. P(x, y) & Q(y)").unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].var, "y");
        let (_, w) = parse_with_warnings("A x. P(x)").unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(parse("P(x) & P").is_err());
    }
}
