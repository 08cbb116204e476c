//! Concrete ASCII syntax for formulae.
//!
//! ```text
//! f ::= "bot" | "top" | ident | ident "(" f {"," f} ")" | "~" f
//!     | f "&" f | f "|" f | f "->" f | f "<->" f | "(" f ")"
//! ```
//!
//! Binding strength, tightest first: `~` and prefix modalities, `&`, `|`,
//! `->` (right associative), `<->`. `&`, `|` and `<->` associate to the left.
//! A unary modality may be written prefix (`Box a`). For binary modalities
//! the conditional notation `O(a | b)` is accepted: when the argument list
//! has no top-level comma, its first top-level `|` separates the arguments.

use super::formula::{Formula, Signature};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    LParen,
    RParen,
    Comma,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                _ => Tok::Ident(word),
            };
            out.push((tok, col));
            continue;
        }
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Bar, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => (Tok::DArrow, 3),
            _ => return Err(Error::syntax(1, col, format!("unexpected character `{c}`"))),
        };
        out.push((tok, col));
        i += len;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// How identifiers that are not declared modalities are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Lowercase identifiers are variables; anything else is an error.
    Schema,
    /// Lowercase identifiers become fresh nullary modalities (atoms).
    Closed,
    /// Unknown modalities are declared on first use, arity from usage.
    Infer,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: Signature,
    mode: Mode,
    bar_stop: bool,
}

fn is_lower(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_lowercase() || c == '_')
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::syntax(1, self.col(), msg))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let saved = self.bar_stop;
        self.bar_stop = false;
        let r = f(self);
        self.bar_stop = saved;
        r
    }

    fn parse_iff(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_imp()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.parse_imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_imp(&mut self) -> Result<Formula> {
        let lhs = self.parse_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.parse_imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_and()?;
        while *self.peek() == Tok::Bar && !self.bar_stop {
            self.bump();
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.parse_unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn starts_unary(tok: &Tok) -> bool {
        matches!(tok, Tok::Ident(_) | Tok::Bot | Tok::Top | Tok::LParen | Tok::Tilde)
    }

    fn parse_unary(&mut self) -> Result<Formula> {
        let col = self.col();
        match self.bump() {
            Tok::Bot => Ok(Formula::Bot),
            Tok::Top => Ok(Formula::Top),
            Tok::Tilde => Ok(Formula::neg(self.parse_unary()?)),
            Tok::LParen => {
                let f = self.nested(|p| p.parse_iff())?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => self.parse_ident(name, col),
            other => Err(Error::syntax(1, col, format!("expected a formula, found {}", other.describe()))),
        }
    }

    fn parse_ident(&mut self, name: String, col: usize) -> Result<Formula> {
        let arity = match self.sig.arity(&name) {
            Some(k) => k,
            None => return self.parse_undeclared(name, col),
        };
        if arity == 0 {
            if *self.peek() == Tok::LParen && *self.peek_at(1) == Tok::RParen {
                self.bump();
                self.bump();
            }
            return Ok(Formula::Apply(name, Vec::new()));
        }
        if *self.peek() == Tok::LParen {
            let args = self.parse_args(arity)?;
            if args.len() != arity {
                return Err(Error::ArityMismatch {
                    name,
                    expected: arity,
                    found: args.len(),
                });
            }
            return Ok(Formula::Apply(name, args));
        }
        if arity == 1 && Self::starts_unary(self.peek()) {
            let arg = self.parse_unary()?;
            return Ok(Formula::Apply(name, vec![arg]));
        }
        Err(Error::ArityMismatch {
            name,
            expected: arity,
            found: 0,
        })
    }

    fn parse_undeclared(&mut self, name: String, col: usize) -> Result<Formula> {
        let called = *self.peek() == Tok::LParen;
        match self.mode {
            Mode::Schema | Mode::Closed if called || !is_lower(&name) => Err(Error::UnknownModality(name)),
            Mode::Schema => Ok(Formula::Var(name)),
            Mode::Closed => {
                self.sig.declare(&name, 0)?;
                Ok(Formula::Apply(name, Vec::new()))
            }
            Mode::Infer if called => {
                let args = self.parse_args(usize::MAX)?;
                self.sig.declare(&name, args.len()).map_err(|e| e.at_line(1, col))?;
                Ok(Formula::Apply(name, args))
            }
            Mode::Infer if is_lower(&name) => Ok(Formula::Var(name)),
            Mode::Infer => {
                if Self::starts_unary(self.peek()) {
                    self.sig.declare(&name, 1)?;
                    let arg = self.parse_unary()?;
                    Ok(Formula::Apply(name, vec![arg]))
                } else {
                    self.sig.declare(&name, 0)?;
                    Ok(Formula::Apply(name, Vec::new()))
                }
            }
        }
    }

    /// True iff the parenthesised group starting at the current `(` has a
    /// comma at its top level.
    fn group_has_comma(&self) -> bool {
        let mut depth = 0usize;
        for (tok, _) in &self.toks[self.pos..] {
            match tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Comma if depth == 1 => return true,
                Tok::End => return false,
                _ => {}
            }
        }
        false
    }

    fn parse_args(&mut self, arity: usize) -> Result<Vec<Formula>> {
        let bar_form = arity == 2 && !self.group_has_comma();
        self.expect(Tok::LParen)?;
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(Vec::new());
        }
        let mut args = Vec::new();
        if bar_form {
            let first = self.nested(|p| {
                p.bar_stop = true;
                p.parse_iff()
            })?;
            args.push(first);
            if *self.peek() == Tok::Bar {
                self.bump();
                args.push(self.nested(|p| p.parse_iff())?);
            }
        } else {
            loop {
                args.push(self.nested(|p| p.parse_iff())?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }
}

fn run(text: &str, sig: Signature, mode: Mode) -> Result<(Formula, Signature)> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        mode,
        bar_stop: false,
    };
    let f = p.parse_iff()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {}", p.peek().describe()));
    }
    Ok((f, p.sig))
}

/// Parses a formula over `sig`. Undeclared lowercase identifiers are
/// variables.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    run(text, sig.clone(), Mode::Schema).map(|(f, _)| f)
}

/// Parses a closed formula, declaring each undeclared lowercase identifier
/// in `sig` as a fresh atom (nullary modality).
pub fn parse_closed_formula(text: &str, sig: &mut Signature) -> Result<Formula> {
    let (f, s) = run(text, sig.clone(), Mode::Closed)?;
    *sig = s;
    Ok(f)
}

/// Parses a formula without a signature: unknown identifiers that are
/// capitalised or applied to arguments are declared as modalities, arity
/// taken from their first use.
pub fn parse_formula_inferring(text: &str) -> Result<(Formula, Signature)> {
    run(text, Signature::new(), Mode::Infer)
}
