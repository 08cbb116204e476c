//! Logic presentations and the `.logic` file format.
//!
//! ```text
//! logic kt
//! mod Box 1
//! axiom Box a -> a
//! rule a <-> b |- Box a <-> Box b
//! # comment
//! ```

use std::fmt::Write as _;

use super::formula::{Formula, Rank, Signature};
use super::parser::parse_formula;
use crate::error::{Error, Result};
use crate::prop;

/// A non-iterative rule: a propositional premiss over variables and a
/// non-iterative conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub premiss: Formula,
    pub conclusion: Formula,
}

impl Rule {
    pub fn new(premiss: Formula, conclusion: Formula) -> Result<Rule> {
        if !premiss.is_propositional() {
            return Err(Error::NotPropositional(premiss.to_string()));
        }
        if !conclusion.classify().is_non_iterative() {
            return Err(Error::Iterative(conclusion.to_string()));
        }
        Ok(Rule { premiss, conclusion })
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} |- {}", self.premiss, self.conclusion)
    }
}

/// A syntactically presented non-iterative logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicPresentation {
    pub name: String,
    pub sig: Signature,
    pub axioms: Vec<Formula>,
    pub rules: Vec<Rule>,
}

impl LogicPresentation {
    pub fn new(name: &str, sig: Signature, axioms: Vec<Formula>, rules: Vec<Rule>) -> Result<Self> {
        for a in &axioms {
            sig.check(a)?;
            if !a.classify().is_non_iterative() {
                return Err(Error::Iterative(a.to_string()));
            }
        }
        for r in &rules {
            sig.check(&r.conclusion)?;
        }
        Ok(LogicPresentation {
            name: name.to_string(),
            sig,
            axioms,
            rules,
        })
    }

    /// Declared axioms followed by the axioms obtained from the rules.
    /// Proof lines index into this list.
    pub fn all_axioms(&self) -> Result<Vec<Formula>> {
        let mut out = self.axioms.clone();
        for r in &self.rules {
            out.push(prop::rule_to_axiom(r)?);
        }
        Ok(out)
    }
}

/// Parses a logic file. Rules are kept as rules; see
/// [`LogicPresentation::all_axioms`] for the converted axiom list.
pub fn parse_logic(text: &str) -> Result<LogicPresentation> {
    let mut name = String::from("unnamed");
    let mut sig = Signature::new();
    let mut axioms = Vec::new();
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let offset = line.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed.trim_end(), ""));
        let rest_col = offset + kw.len() + 2;
        match kw {
            "logic" => {
                let n = rest.trim();
                if n.is_empty() {
                    return Err(Error::syntax(lineno, offset + 1, "`logic` needs a name"));
                }
                name = n.to_string();
            }
            "mod" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [m, k] = parts.as_slice() else {
                    return Err(Error::syntax(lineno, offset + 1, "expected `mod <name> <arity>`"));
                };
                if !m.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                    || !m.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
                    || matches!(*m, "bot" | "top")
                {
                    return Err(Error::syntax(lineno, rest_col, format!("invalid modality name `{m}`")));
                }
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::syntax(lineno, rest_col, format!("invalid arity `{k}`")))?;
                sig.declare(m, k).map_err(|e| Error::syntax(lineno, rest_col, e.to_string()))?;
            }
            "axiom" => {
                let f = parse_formula(rest, &sig).map_err(|e| located(e, lineno, rest_col))?;
                if !f.classify().is_non_iterative() {
                    return Err(Error::syntax(lineno, rest_col, format!("axiom `{f}` nests modal operators")));
                }
                axioms.push(f);
            }
            "rule" => {
                let Some((prem, concl)) = rest.split_once("|-") else {
                    return Err(Error::syntax(lineno, rest_col, "expected `rule <premiss> |- <conclusion>`"));
                };
                let p = parse_formula(prem, &sig).map_err(|e| located(e, lineno, rest_col))?;
                let concl_col = rest_col + prem.len() + 2;
                let c = parse_formula(concl, &sig).map_err(|e| located(e, lineno, concl_col))?;
                let r = Rule::new(p, c).map_err(|e| Error::syntax(lineno, rest_col, e.to_string()))?;
                rules.push(r);
            }
            other => {
                return Err(Error::syntax(lineno, offset + 1, format!("unknown directive `{other}`")));
            }
        }
    }
    LogicPresentation::new(&name, sig, axioms, rules)
}

fn located(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Syntax { col: c, msg, .. } => Error::syntax(line, col + c - 1, msg),
        other => Error::syntax(line, col, other.to_string()),
    }
}

pub fn write_logic(l: &LogicPresentation) -> String {
    let mut out = format!("logic {}\n", l.name);
    for m in l.sig.iter() {
        let _ = writeln!(out, "mod {} {}", m.name, m.arity);
    }
    for a in &l.axioms {
        let _ = writeln!(out, "axiom {a}");
    }
    for r in &l.rules {
        let _ = writeln!(out, "rule {r}");
    }
    out
}

/// Rank of a whole presentation: the weakest rank among its axioms.
pub fn logic_rank(l: &LogicPresentation) -> Rank {
    let mut rank = Rank::Rank1;
    for a in &l.axioms {
        match a.classify() {
            Rank::Iterative => return Rank::Iterative,
            Rank::NonIterative => rank = Rank::NonIterative,
            Rank::Rank1 => {}
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    const KT: &str = "logic kt\nmod Box 1\naxiom Box top\naxiom Box(a -> b) -> Box a -> Box b # K\naxiom Box a -> a\n";

    #[test]
    fn parses_and_reprints() {
        let l = parse_logic(KT).unwrap();
        assert_eq!(l.name, "kt");
        assert_eq!(l.axioms.len(), 3);
        assert_eq!(parse_logic(&write_logic(&l)).unwrap(), l);
        assert_eq!(logic_rank(&l), Rank::NonIterative);
    }

    #[test]
    fn rules_parse() {
        let l = parse_logic("mod L 1\nrule a <-> b |- L a <-> L b\n").unwrap();
        assert_eq!(l.rules.len(), 1);
        assert_eq!(l.all_axioms().unwrap().len(), 1);
    }

    #[test]
    fn diagnostics_name_the_line() {
        let err = parse_logic("mod Box 1\naxiom Box Box a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
        let err = parse_logic("mod Box 1\n\naxiom Box (a &\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
        let err = parse_logic("frobnicate\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 1, .. }));
        let err = parse_logic("mod Box 1\nrule Box a |- Box a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
    }
}
