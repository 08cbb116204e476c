//! The proof file format: one proof line per text line.
//!
//! ```text
//! Box p -> p ; ax 2 {a:=p}
//! p | ~p <-> top ; pl
//! L(p | ~p) <-> L top ; cong L 1
//! ```
//!
//! Proof lines are numbered from 0, skipping blank and comment lines.
//! Formulae are closed: undeclared lowercase identifiers are atoms.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::syntax::{parse_closed_formula, LogicPresentation, Substitution};

use super::{Justification, Proof, ProofLine};

pub fn parse_proof(text: &str, logic: &LogicPresentation) -> Result<Proof> {
    let mut sig = logic.sig.clone();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((ftext, jtext)) = line.split_once(';') else {
            return Err(Error::syntax(lineno, 1, "expected `<formula> ; <justification>`"));
        };
        let formula = parse_closed_formula(ftext, &mut sig).map_err(|e| e.at_line(lineno, 0))?;
        let jcol = ftext.len() + 2;
        let jtrim = jtext.trim_start();
        let jcol = jcol + (jtext.len() - jtrim.len());
        let (kw, rest) = jtrim.split_once(char::is_whitespace).unwrap_or((jtrim.trim_end(), ""));
        let rest_col = jcol + kw.len() + 1;
        let justification = match kw {
            "ax" => {
                let rest = rest.trim();
                let (idx, subst) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let index: usize = idx
                    .parse()
                    .map_err(|_| Error::syntax(lineno, rest_col, format!("expected an axiom index, found `{idx}`")))?;
                let subst = parse_subst(subst.trim(), &mut sig, lineno, rest_col)?;
                Justification::Ax { index, subst }
            }
            "pl" => Justification::Pl(parse_refs(rest, lineno, rest_col)?),
            "cong" => {
                let rest = rest.trim();
                let (m, refs) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if m.is_empty() {
                    return Err(Error::syntax(lineno, rest_col, "`cong` needs a modality"));
                }
                Justification::Cong {
                    modality: m.to_string(),
                    refs: parse_refs(refs, lineno, rest_col)?,
                }
            }
            other => {
                return Err(Error::syntax(
                    lineno,
                    jcol,
                    format!("unknown justification `{other}`; expected ax, pl or cong"),
                ))
            }
        };
        lines.push(ProofLine {
            formula,
            justification,
            source_line: Some(lineno),
        });
    }
    Ok(Proof {
        logic: logic.clone(),
        lines,
    })
}

fn parse_refs(text: &str, line: usize, col: usize) -> Result<Vec<usize>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(vec![]);
    }
    t.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse()
                .map_err(|_| Error::syntax(line, col, format!("expected a line number, found `{s}`")))
        })
        .collect()
}

/// Parses `{a:=f, b:=g}`, splitting at commas outside parentheses.
fn parse_subst(
    text: &str,
    sig: &mut crate::syntax::Signature,
    line: usize,
    col: usize,
) -> Result<Substitution> {
    if text.is_empty() {
        return Ok(Substitution::new());
    }
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::syntax(line, col, "expected `{a:=<formula>, ...}`"))?;
    let mut out = Substitution::new();
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    if parts.len() == 1 && parts[0].trim().is_empty() {
        return Ok(out);
    }
    for part in parts {
        let Some((x, f)) = part.split_once(":=") else {
            return Err(Error::syntax(line, col, format!("expected `var:=formula`, found `{}`", part.trim())));
        };
        let x = x.trim();
        if x.is_empty() || !x.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            return Err(Error::syntax(line, col, format!("invalid variable `{x}`")));
        }
        let g = parse_closed_formula(f, sig).map_err(|e| match e {
            Error::Syntax { msg, .. } => Error::syntax(line, col, format!("in value for `{x}`: {msg}")),
            other => Error::syntax(line, col, other.to_string()),
        })?;
        if out.contains(x) {
            return Err(Error::syntax(line, col, format!("`{x}` is substituted twice")));
        }
        out.insert(x, g);
    }
    Ok(out)
}

pub fn write_proof(p: &Proof) -> String {
    let mut out = String::new();
    for l in &p.lines {
        let _ = write!(out, "{} ; ", l.formula);
        let join = |refs: &[usize]| refs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match &l.justification {
            Justification::Ax { index, subst } => {
                let items: Vec<String> = subst.iter().map(|(x, g)| format!("{x}:={g}")).collect();
                let _ = write!(out, "ax {index} {{{}}}", items.join(", "));
            }
            Justification::Pl(refs) => {
                out.push_str("pl");
                if !refs.is_empty() {
                    let _ = write!(out, " {}", join(refs));
                }
            }
            Justification::Cong { modality, refs } => {
                let _ = write!(out, "cong {modality} {}", join(refs));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, Reason};
    use super::*;
    use crate::syntax::parse_logic;

    fn logic() -> LogicPresentation {
        parse_logic("mod Box 1\nmod O 2\naxiom Box a -> a\naxiom O(a, b) -> Box a\n").unwrap()
    }

    #[test]
    fn parses_and_round_trips() {
        let text = "# T instance\nBox p -> p ; ax 0 {a:=p}\n\nO(p | q) -> Box p ; ax 1 {a:=p, b:=q}\nBox(p & O(q, r)) -> p & O(q, r) ; ax 0 {a:=p & O(q, r)}\np -> p ; pl\n(Box p -> p) & (p -> p) ; pl 0,3\n";
        let p = parse_proof(text, &logic()).unwrap();
        assert_eq!(p.lines.len(), 5);
        assert_eq!(p.lines[1].source_line, Some(4));
        assert!(check_proof(&p).is_ok());
        let again = parse_proof(&write_proof(&p), &logic()).unwrap();
        assert_eq!(
            again.lines.iter().map(|l| (&l.formula, &l.justification)).collect::<Vec<_>>(),
            p.lines.iter().map(|l| (&l.formula, &l.justification)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn diagnostics() {
        let e = parse_proof("Box p -> p ; bx 0\n", &logic()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, col: 14, .. }), "{e:?}");
        let e = parse_proof("\nBox p -> ; ax 0 {a:=p}\n", &logic()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }), "{e:?}");
        let e = parse_proof("Box p -> p ; ax 0 {a=p}\n", &logic()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }), "{e:?}");
        let e = parse_proof("Box p -> p\n", &logic()).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }), "{e:?}");
        let p = parse_proof("Box p -> p ; ax 0 {a:=q}\n", &logic()).unwrap();
        assert_eq!(check_proof(&p).unwrap_err().reason, Reason::BadInstance);
    }
}
