use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::prop::{eval_in_powerset, SetValuation};
use crate::sat::Expr;
use crate::subset::Subset;
use crate::syntax::Formula;

use super::element::{FunctorElement, Layout};

/// Boolean combination of modal atoms `L(A1,..,Ak)` and set atoms `B`,
/// with `A_i`, `B` concrete subsets of the base set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step01Node {
    Bot,
    Top,
    Modal(String, Vec<Subset>),
    Set(Subset),
    Not(Box<Step01Node>),
    And(Box<Step01Node>, Box<Step01Node>),
    Or(Box<Step01Node>, Box<Step01Node>),
    Imp(Box<Step01Node>, Box<Step01Node>),
    Iff(Box<Step01Node>, Box<Step01Node>),
}

/// A 0-1-step formula over the base set `{0..base}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step01Formula {
    pub base: usize,
    pub root: Step01Node,
}

impl Step01Node {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Step01Node) -> Step01Node {
        Step01Node::Not(Box::new(a))
    }

    pub fn and(a: Step01Node, b: Step01Node) -> Step01Node {
        Step01Node::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Step01Node, b: Step01Node) -> Step01Node {
        Step01Node::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Step01Node, b: Step01Node) -> Step01Node {
        Step01Node::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Step01Node, b: Step01Node) -> Step01Node {
        Step01Node::Iff(Box::new(a), Box::new(b))
    }

    fn sets_into(&self, out: &mut BTreeSet<Subset>) {
        match self {
            Step01Node::Bot | Step01Node::Top => {}
            Step01Node::Modal(_, args) => out.extend(args.iter().copied()),
            Step01Node::Set(s) => {
                out.insert(*s);
            }
            Step01Node::Not(a) => a.sets_into(out),
            Step01Node::And(a, b) | Step01Node::Or(a, b) | Step01Node::Imp(a, b) | Step01Node::Iff(a, b) => {
                a.sets_into(out);
                b.sets_into(out);
            }
        }
    }

    fn holds(&self, t: &FunctorElement) -> bool {
        match self {
            Step01Node::Bot => false,
            Step01Node::Top => true,
            Step01Node::Modal(name, args) => t.contains(name, args),
            Step01Node::Set(s) => s.contains(t.point()),
            Step01Node::Not(a) => !a.holds(t),
            Step01Node::And(a, b) => a.holds(t) && b.holds(t),
            Step01Node::Or(a, b) => a.holds(t) || b.holds(t),
            Step01Node::Imp(a, b) => !a.holds(t) || b.holds(t),
            Step01Node::Iff(a, b) => a.holds(t) == b.holds(t),
        }
    }

    /// Compiles to an expression over the membership bits of `layout`, with
    /// set atoms decided by `point`.
    pub(crate) fn to_expr(&self, layout: &Layout, point: usize) -> Result<Expr> {
        Ok(match self {
            Step01Node::Bot => Expr::Const(false),
            Step01Node::Top => Expr::Const(true),
            Step01Node::Modal(name, args) => Expr::Lit(layout.bit(name, args)?, true),
            Step01Node::Set(s) => Expr::Const(s.contains(point)),
            Step01Node::Not(a) => a.to_expr(layout, point)?.not(),
            Step01Node::And(a, b) => Expr::and(vec![a.to_expr(layout, point)?, b.to_expr(layout, point)?]),
            Step01Node::Or(a, b) => Expr::or(vec![a.to_expr(layout, point)?, b.to_expr(layout, point)?]),
            Step01Node::Imp(a, b) => Expr::imp(a.to_expr(layout, point)?, b.to_expr(layout, point)?),
            Step01Node::Iff(a, b) => Expr::iff(a.to_expr(layout, point)?, b.to_expr(layout, point)?),
        })
    }
}

impl Step01Formula {
    pub fn new(base: usize, root: Step01Node) -> Result<Step01Formula> {
        let f = Step01Formula { base, root };
        if let Some(s) = f.sets().into_iter().find(|s| !s.within(base)) {
            return Err(Error::BaseMismatch { set: s.to_string(), base });
        }
        Ok(f)
    }

    /// Every subset occurring in the formula, as modal argument or set atom.
    pub fn sets(&self) -> BTreeSet<Subset> {
        let mut out = BTreeSet::new();
        self.root.sets_into(&mut out);
        out
    }
}

fn write_node(n: &Step01Node, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
    let bin = |f: &mut fmt::Formatter<'_>, a: &Step01Node, op: &str, b: &Step01Node| -> fmt::Result {
        if !top {
            f.write_str("(")?;
        }
        write_node(a, f, false)?;
        write!(f, " {op} ")?;
        write_node(b, f, false)?;
        if !top {
            f.write_str(")")?;
        }
        Ok(())
    };
    match n {
        Step01Node::Bot => f.write_str("bot"),
        Step01Node::Top => f.write_str("top"),
        Step01Node::Modal(name, args) => {
            f.write_str(name)?;
            if !args.is_empty() {
                f.write_str("(")?;
                for (i, s) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")?;
            }
            Ok(())
        }
        Step01Node::Set(s) => write!(f, "{s}"),
        Step01Node::Not(a) => {
            f.write_str("~")?;
            write_node(a, f, false)
        }
        Step01Node::And(a, b) => bin(f, a, "&", b),
        Step01Node::Or(a, b) => bin(f, a, "|", b),
        Step01Node::Imp(a, b) => bin(f, a, "->", b),
        Step01Node::Iff(a, b) => bin(f, a, "<->", b),
    }
}

impl fmt::Display for Step01Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(&self.root, f, true)
    }
}

/// The 0-1-step instance of a non-iterative formula: arguments of modal
/// operators are evaluated to sets under `tau`, top-level variables become
/// set atoms.
pub fn instantiate(axiom: &Formula, tau: &SetValuation) -> Result<Step01Formula> {
    if !axiom.classify().is_non_iterative() {
        return Err(Error::Iterative(axiom.to_string()));
    }
    Ok(Step01Formula {
        base: tau.base(),
        root: inst(axiom, tau)?,
    })
}

fn inst(f: &Formula, tau: &SetValuation) -> Result<Step01Node> {
    let bin = |a: &Formula, b: &Formula| -> Result<(Box<Step01Node>, Box<Step01Node>)> {
        Ok((Box::new(inst(a, tau)?), Box::new(inst(b, tau)?)))
    };
    Ok(match f {
        Formula::Bot => Step01Node::Bot,
        Formula::Top => Step01Node::Top,
        Formula::Var(x) => Step01Node::Set(tau.get(x).ok_or_else(|| Error::Unassigned(x.clone()))?),
        Formula::Neg(a) => Step01Node::Not(Box::new(inst(a, tau)?)),
        Formula::And(a, b) => {
            let (a, b) = bin(a, b)?;
            Step01Node::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b)?;
            Step01Node::Or(a, b)
        }
        Formula::Imp(a, b) => {
            let (a, b) = bin(a, b)?;
            Step01Node::Imp(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = bin(a, b)?;
            Step01Node::Iff(a, b)
        }
        Formula::Apply(name, args) => Step01Node::Modal(
            name.clone(),
            args.iter().map(|g| eval_in_powerset(g, tau)).collect::<Result<_>>()?,
        ),
    })
}

/// Whether the element `t` satisfies `psi`.
pub fn eval_step01(t: &FunctorElement, psi: &Step01Formula) -> Result<bool> {
    if psi.base != t.base() {
        return Err(Error::BaseMismatch {
            set: format!("formula over {} elements", psi.base),
            base: t.base(),
        });
    }
    Ok(psi.root.holds(t))
}
