//! Hilbert-style proofs: axiom instances, propositional steps and the
//! congruence rule.

mod file;

use std::fmt;

use crate::error::Error;
use crate::prop::pl_entails;
use crate::syntax::{Formula, LogicPresentation, Substitution};

pub use file::{parse_proof, write_proof};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Instance of axiom `index` (into [`LogicPresentation::all_axioms`]).
    Ax { index: usize, subst: Substitution },
    /// Propositional consequence of the referenced lines.
    Pl(Vec<usize>),
    /// `L(f1..fk) <-> L(g1..gk)` from lines `f_i <-> g_i`.
    Cong { modality: String, refs: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
    /// Line in the source file, when parsed from one.
    pub source_line: Option<usize>,
}

impl ProofLine {
    pub fn new(formula: Formula, justification: Justification) -> ProofLine {
        ProofLine {
            formula,
            justification,
            source_line: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub logic: LogicPresentation,
    pub lines: Vec<ProofLine>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    BadInstance,
    NotPlEntailed,
    BadCongruenceShape,
    BadReference,
    /// The propositional check exceeded the truth-table limit.
    ResourceLimit,
    EmptyProof,
    /// A line formula or substitution value contains variables.
    OpenFormula,
    /// The conclusion does not have the shape `check_derives` requires.
    ConclusionMismatch,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::BadInstance => "bad-instance",
            Reason::NotPlEntailed => "not-pl-entailed",
            Reason::BadCongruenceShape => "bad-congruence-shape",
            Reason::BadReference => "bad-reference",
            Reason::ResourceLimit => "resource-limit",
            Reason::EmptyProof => "empty-proof",
            Reason::OpenFormula => "open-formula",
            Reason::ConclusionMismatch => "conclusion-mismatch",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A rejected proof line (0-based index into the proof).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofError {
    pub line: usize,
    pub source_line: Option<usize>,
    pub reason: Reason,
    pub detail: String,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.source_line {
            Some(s) => write!(f, "line {s} (proof line {}): {}: {}", self.line, self.reason, self.detail),
            None => write!(f, "proof line {}: {}: {}", self.line, self.reason, self.detail),
        }
    }
}

impl std::error::Error for ProofError {}

/// Checks every line in order and returns the last line's formula.
pub fn check_proof(p: &Proof) -> Result<Formula, ProofError> {
    let fail = |i: usize, reason: Reason, detail: String| ProofError {
        line: i,
        source_line: p.lines.get(i).and_then(|l| l.source_line),
        reason,
        detail,
    };
    let Some(last) = p.lines.last() else {
        return Err(fail(0, Reason::EmptyProof, "a proof needs at least one line".into()));
    };
    let axioms = p
        .logic
        .all_axioms()
        .map_err(|e| fail(0, Reason::ResourceLimit, e.to_string()))?;
    for (i, line) in p.lines.iter().enumerate() {
        let f = &line.formula;
        if !f.is_closed() {
            return Err(fail(i, Reason::OpenFormula, format!("`{f}` contains variables")));
        }
        let earlier = |refs: &[usize]| -> Result<Vec<&Formula>, ProofError> {
            refs.iter()
                .map(|&r| {
                    if r < i {
                        Ok(&p.lines[r].formula)
                    } else {
                        Err(fail(i, Reason::BadReference, format!("line {r} is not an earlier line")))
                    }
                })
                .collect()
        };
        match &line.justification {
            Justification::Ax { index, subst } => {
                let Some(axiom) = axioms.get(*index) else {
                    return Err(fail(
                        i,
                        Reason::BadReference,
                        format!("no axiom {index}; the logic has {}", axioms.len()),
                    ));
                };
                if let Some(x) = axiom.variables().into_iter().find(|x| !subst.contains(x)) {
                    return Err(fail(i, Reason::BadInstance, format!("substitution does not cover `{x}`")));
                }
                if let Some((x, g)) = subst.iter().find(|(_, g)| !g.is_closed()) {
                    return Err(fail(i, Reason::OpenFormula, format!("value `{g}` for `{x}` contains variables")));
                }
                let inst = axiom.apply_substitution(subst);
                if inst != *f {
                    return Err(fail(
                        i,
                        Reason::BadInstance,
                        format!("axiom {index} instantiates to `{inst}`, not `{f}`"),
                    ));
                }
            }
            Justification::Pl(refs) => {
                let premises: Vec<Formula> = earlier(refs)?.into_iter().cloned().collect();
                match pl_entails(&premises, f) {
                    Ok(true) => {}
                    Ok(false) => {
                        return Err(fail(
                            i,
                            Reason::NotPlEntailed,
                            format!("`{f}` does not follow propositionally from lines {refs:?}"),
                        ))
                    }
                    Err(e) => return Err(fail(i, Reason::ResourceLimit, e.to_string())),
                }
            }
            Justification::Cong { modality, refs } => {
                let arity = p.logic.sig.arity(modality);
                if arity != Some(refs.len()) {
                    return Err(fail(
                        i,
                        Reason::BadCongruenceShape,
                        format!("`{modality}` needs one premiss per argument"),
                    ));
                }
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for (r, g) in refs.iter().zip(earlier(refs)?) {
                    let Formula::Iff(a, b) = g else {
                        return Err(fail(i, Reason::BadCongruenceShape, format!("line {r} is not an equivalence")));
                    };
                    lhs.push((**a).clone());
                    rhs.push((**b).clone());
                }
                let want = Formula::iff(Formula::apply(modality, lhs), Formula::apply(modality, rhs));
                if *f != want {
                    return Err(fail(
                        i,
                        Reason::BadCongruenceShape,
                        format!("congruence yields `{want}`, not `{f}`"),
                    ));
                }
            }
        }
    }
    Ok(last.formula.clone())
}

/// Checks that `p` proves `(phi_1 & .. & phi_k) -> psi` for members
/// `phi_i` of `phis` (any bracketing), or `psi` itself.
pub fn check_derives(logic: &LogicPresentation, phis: &[Formula], psi: &Formula, p: &Proof) -> Result<(), ProofError> {
    if p.logic != *logic {
        return Err(ProofError {
            line: 0,
            source_line: None,
            reason: Reason::ConclusionMismatch,
            detail: format!("proof is over logic `{}`, not `{}`", p.logic.name, logic.name),
        });
    }
    let concl = check_proof(p)?;
    let covered = |a: &Formula| -> bool {
        fn go(a: &Formula, phis: &[Formula]) -> bool {
            if *a == Formula::Top || phis.contains(a) {
                return true;
            }
            matches!(a, Formula::And(x, y) if go(x, phis) && go(y, phis))
        }
        go(a, phis)
    };
    let ok = concl == *psi || matches!(&concl, Formula::Imp(a, b) if **b == *psi && covered(a));
    if ok {
        return Ok(());
    }
    let last = p.lines.len() - 1;
    Err(ProofError {
        line: last,
        source_line: p.lines[last].source_line,
        reason: Reason::ConclusionMismatch,
        detail: format!("`{concl}` is not `{psi}` or an implication to it from the assumptions"),
    })
}

impl From<ProofError> for Error {
    fn from(e: ProofError) -> Error {
        Error::Invalid(e.to_string())
    }
}
