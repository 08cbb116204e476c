//! The frame file format.
//!
//! ```text
//! # two states, reflexive Box
//! states 2
//! mod Box 1
//! mod p 0
//! nu Box 0 {0,1}
//! nu Box 1 {1}
//! nu p 0 ()
//! witness 0
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_BASE};
use crate::syntax::Signature;

use super::model::NeighbourhoodModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameFile {
    pub model: NeighbourhoodModel,
    pub witness: Option<usize>,
}

struct NuLine {
    line: usize,
    col: usize,
    name: String,
    state: usize,
    tuple: Vec<Subset>,
}

pub fn parse_frame(text: &str) -> Result<FrameFile> {
    let mut states: Option<usize> = None;
    let mut sig = Signature::new();
    let mut nus = Vec::new();
    let mut witness = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let words = Words::new(line);
        let toks: Vec<(usize, &str)> = words.collect();
        let Some(&(kcol, kw)) = toks.first() else {
            continue;
        };
        let arg = |k: usize, what: &str| -> Result<(usize, &str)> {
            toks.get(k)
                .copied()
                .ok_or_else(|| Error::syntax(lineno, line.trim_end().len() + 1, format!("missing {what}")))
        };
        let number = |k: usize, what: &str| -> Result<usize> {
            let (col, w) = arg(k, what)?;
            w.parse().map_err(|_| Error::syntax(lineno, col, format!("expected {what}, found `{w}`")))
        };
        match kw {
            "states" => {
                if states.is_some() {
                    return Err(Error::syntax(lineno, kcol, "duplicate `states` line"));
                }
                let n = number(1, "a state count")?;
                if n == 0 || n >= MAX_BASE {
                    return Err(Error::syntax(lineno, arg(1, "")?.0, format!("state count must be 1..{}", MAX_BASE - 1)));
                }
                expect_end(&toks, 2, lineno)?;
                states = Some(n);
            }
            "mod" => {
                let (ncol, name) = arg(1, "a modality name")?;
                let k = number(2, "an arity")?;
                expect_end(&toks, 3, lineno)?;
                sig.declare(name, k).map_err(|e| Error::syntax(lineno, ncol, e.to_string()))?;
            }
            "nu" => {
                let (ncol, name) = arg(1, "a modality name")?;
                let state = number(2, "a state")?;
                let (tcol, _) = arg(3, "a tuple of sets")?;
                let tuple = parse_tuple(&line[tcol - 1..], lineno, tcol)?;
                nus.push(NuLine {
                    line: lineno,
                    col: ncol,
                    name: name.to_string(),
                    state,
                    tuple,
                });
            }
            "witness" => {
                witness = Some((lineno, arg(1, "a state")?.0, number(1, "a state")?));
                expect_end(&toks, 2, lineno)?;
            }
            other => return Err(Error::syntax(lineno, kcol, format!("unknown directive `{other}`"))),
        }
    }
    let n = states.ok_or_else(|| Error::syntax(1, 1, "missing `states` line"))?;
    let mut model = NeighbourhoodModel::new(sig, n)?;
    for nu in nus {
        model
            .add_neighbourhood(&nu.name, nu.state, nu.tuple)
            .map_err(|e| Error::syntax(nu.line, nu.col, e.to_string()))?;
    }
    let witness = match witness {
        Some((line, col, w)) if w >= n => {
            return Err(Error::syntax(line, col, format!("witness {w} is not a state")));
        }
        Some((_, _, w)) => Some(w),
        None => None,
    };
    Ok(FrameFile { model, witness })
}

fn expect_end(toks: &[(usize, &str)], k: usize, line: usize) -> Result<()> {
    match toks.get(k) {
        Some(&(col, w)) => Err(Error::syntax(line, col, format!("unexpected `{w}`"))),
        None => Ok(()),
    }
}

/// Whitespace-separated words with their 1-based columns.
struct Words<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Words<'a> {
    fn new(s: &'a str) -> Self {
        Words { s, pos: 0 }
    }
}

impl<'a> Iterator for Words<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        let rest = &self.s[self.pos..];
        let start = self.pos + (rest.len() - rest.trim_start().len());
        if start >= self.s.len() {
            return None;
        }
        let len = self.s[start..].find(char::is_whitespace).unwrap_or(self.s.len() - start);
        self.pos = start + len;
        Some((start + 1, &self.s[start..start + len]))
    }
}

/// Parses `()` or a sequence of `{i,j,..}` sets.
fn parse_tuple(s: &str, line: usize, col0: usize) -> Result<Vec<Subset>> {
    let t = s.trim_end();
    if let Some(inner) = t.strip_prefix('(') {
        let inner = inner.trim_start();
        if inner != ")" {
            return Err(Error::syntax(line, col0, "expected `()`"));
        }
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut rest = t;
    let mut col = col0;
    loop {
        let trimmed = rest.trim_start();
        col += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('{') {
            return Err(Error::syntax(line, col, "expected `{`"));
        }
        let close = rest
            .find('}')
            .ok_or_else(|| Error::syntax(line, col, "unclosed `{`"))?;
        out.push(parse_set(&rest[1..close], line, col + 1)?);
        col += close + 1;
        rest = &rest[close + 1..];
    }
    Ok(out)
}

/// Parses the inside of `{..}`: comma-separated state indices.
pub(crate) fn parse_set(inner: &str, line: usize, col: usize) -> Result<Subset> {
    let mut s = Subset::EMPTY;
    if inner.trim().is_empty() {
        return Ok(s);
    }
    for part in inner.split(',') {
        let p = part.trim();
        let x: usize = p
            .parse()
            .map_err(|_| Error::syntax(line, col, format!("expected a state index, found `{p}`")))?;
        if x >= MAX_BASE {
            return Err(Error::syntax(line, col, format!("state {x} out of range")));
        }
        s = s.with(x);
    }
    Ok(s)
}

/// Parses a set written as `{i,j,..}`.
pub fn parse_subset(text: &str) -> Result<Subset> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::syntax(1, 1, format!("expected a set like {{0,2}}, found `{t}`")))?;
    parse_set(inner, 1, 2)
}

/// Writes a model in the frame file format: modalities in signature order,
/// then states ascending, then tuples in sorted order.
pub fn write_frame(m: &NeighbourhoodModel, witness: Option<usize>) -> String {
    let mut out = format!("states {}\n", m.size());
    for md in m.sig().iter() {
        let _ = writeln!(out, "mod {} {}", md.name, md.arity);
    }
    for md in m.sig().iter() {
        for x in 0..m.size() {
            for t in m.neighbourhoods(&md.name, x).expect("declared") {
                let _ = write!(out, "nu {} {x} ", md.name);
                if t.is_empty() {
                    out.push_str("()");
                } else {
                    let sets: Vec<String> = t.iter().map(Subset::to_string).collect();
                    out.push_str(&sets.join(" "));
                }
                out.push('\n');
            }
        }
    }
    if let Some(w) = witness {
        let _ = writeln!(out, "witness {w}");
    }
    out
}
