use crate::error::{Error, Result};
use crate::prop::{eval_in_powerset, SetValuation};
use crate::subset::Subset;
use crate::syntax::{Formula, Rule, Signature};

use super::formula::instantiate;
use super::subfunctor::Step01Context;
use super::FunctorElement;

/// Largest number of variables [`extract_rule`] accepts.
pub const MAX_EXTRACT_VARS: usize = 10;

/// The rule `phi / psi0` where `phi` is the conjunction of every clause
/// over `vars` (each variable at most once, literals in the order of
/// `vars`) that `tau` makes true everywhere.
pub fn extract_rule(tau: &SetValuation, vars: &[String], psi0: &Formula) -> Result<Rule> {
    if vars.len() > MAX_EXTRACT_VARS {
        return Err(Error::Resource(format!(
            "rule extraction over {} variables exceeds the limit of {MAX_EXTRACT_VARS}",
            vars.len()
        )));
    }
    for x in psi0.variables() {
        if !vars.contains(&x) {
            return Err(Error::Unassigned(x));
        }
    }
    let all = Subset::full(tau.base());
    let mut clauses = Vec::new();
    // digit 0: absent, 1: positive, 2: negative
    for code in 1..3usize.pow(vars.len() as u32) {
        let mut lits = Vec::new();
        let mut c = code;
        let mut digits = vec![0; vars.len()];
        for d in digits.iter_mut().rev() {
            *d = c % 3;
            c /= 3;
        }
        for (x, d) in vars.iter().zip(&digits) {
            match d {
                1 => lits.push(Formula::var(x)),
                2 => lits.push(Formula::neg(Formula::var(x))),
                _ => {}
            }
        }
        let chi = Formula::disj(lits);
        if eval_in_powerset(&chi, tau)? == all {
            clauses.push(chi);
        }
    }
    Rule::new(Formula::conj(clauses), psi0.clone())
}

/// Brute-force 0-1-step soundness of a rule over a base set of `base`
/// points: for every valuation making the premiss true everywhere, the
/// conclusion's instance must hold at every functor element. Returns the
/// first violation.
pub fn check_rule_step01_sound(
    rule: &Rule,
    sig: &Signature,
    base: usize,
) -> Result<Option<(SetValuation, FunctorElement)>> {
    let ctx = Step01Context::new(sig.clone(), vec![], base)?;
    let elements = ctx.elements()?;
    let mut vars: Vec<String> = rule.premiss.variables().into_iter().collect();
    for x in rule.conclusion.variables() {
        if !vars.contains(&x) {
            vars.push(x);
        }
    }
    let all = Subset::full(base);
    for sigma in SetValuation::enumerate(&vars, base) {
        if eval_in_powerset(&rule.premiss, &sigma)? != all {
            continue;
        }
        let inst = instantiate(&rule.conclusion, &sigma)?;
        for t in &elements {
            if !super::eval_step01(t, &inst)? {
                return Ok(Some((sigma, t.clone())));
            }
        }
    }
    Ok(None)
}
