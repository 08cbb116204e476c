//! Boolean equations over powerset algebras, projective unifiers and the
//! conversion of rules into axioms.

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::syntax::{Formula, Rule, Substitution};

use super::powerset::{eval_in_powerset, SetValuation};
use super::truth::{Atomized, MAX_ATOMS};

/// A system `phi_i = psi_i` over a powerset algebra. Coefficients are the
/// variables interpreted by `coefficients`; `unknowns` are solved for.
#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub coefficients: SetValuation,
    pub unknowns: Vec<String>,
    pub equations: Vec<(Formula, Formula)>,
}

impl EquationSystem {
    pub fn new(coefficients: SetValuation, unknowns: Vec<String>, equations: Vec<(Formula, Formula)>) -> Result<Self> {
        for w in &unknowns {
            if coefficients.get(w).is_some() {
                return Err(Error::Invalid(format!("`{w}` is both a coefficient and an unknown")));
            }
        }
        for (l, r) in &equations {
            for f in [l, r] {
                if !f.is_propositional() {
                    return Err(Error::NotPropositional(f.to_string()));
                }
                for x in f.variables() {
                    if coefficients.get(&x).is_none() && !unknowns.contains(&x) {
                        return Err(Error::Unassigned(x));
                    }
                }
            }
        }
        Ok(EquationSystem {
            coefficients,
            unknowns,
            equations,
        })
    }

    pub fn base(&self) -> usize {
        self.coefficients.base()
    }

    /// The single equation `phi = top` equivalent to the system.
    pub fn combined(&self) -> Formula {
        Formula::conj(self.equations.iter().map(|(l, r)| Formula::iff(l.clone(), r.clone())))
    }

    /// Whether `kappa` (a valuation of the unknowns) solves the system.
    pub fn is_solution(&self, kappa: &SetValuation) -> Result<bool> {
        let mut tau = self.coefficients.clone();
        for w in &self.unknowns {
            let s = kappa.get(w).ok_or_else(|| Error::Unassigned(w.clone()))?;
            tau.insert(w.clone(), s)?;
        }
        Ok(eval_in_powerset(&self.combined(), &tau)? == Subset::full(self.base()))
    }

    /// Whether the substitution `sigma` of the unknowns solves the system.
    pub fn is_solved_by(&self, sigma: &Substitution) -> Result<bool> {
        let phi = self.combined().apply_substitution(sigma);
        Ok(eval_in_powerset(&phi, &self.coefficients)? == Subset::full(self.base()))
    }
}

/// Solves the system by Boolean expansion, eliminating unknowns in
/// declaration order. The result maps every unknown to a formula over the
/// coefficients; `None` means the system has no solution in the algebra.
pub fn solve_boolean_system(sys: &EquationSystem) -> Result<Option<Substitution>> {
    solve_from(&sys.combined().simplify(), &sys.unknowns, &sys.coefficients)
}

fn solve_from(phi: &Formula, unknowns: &[String], tau: &SetValuation) -> Result<Option<Substitution>> {
    let Some((x, rest)) = unknowns.split_first() else {
        let ok = eval_in_powerset(phi, tau)? == Subset::full(tau.base());
        return Ok(ok.then(Substitution::new));
    };
    let phi_top = phi.replace_var(x, &Formula::Top).simplify();
    let phi_bot = phi.replace_var(x, &Formula::Bot).simplify();
    let next = Formula::imp(Formula::neg(phi_bot), phi_top.clone()).simplify();
    let Some(inner) = solve_from(&next, rest, tau)? else {
        return Ok(None);
    };
    let mut sigma = inner.clone();
    sigma.insert(x.clone(), phi_top.apply_substitution(&inner).simplify());
    Ok(Some(sigma))
}

/// For a single-unknown system solved as `x := phi[top/x]`, checks that the
/// solution `kappa` is contained in the computed one.
pub fn check_part_ii(sys: &EquationSystem, kappa: &SetValuation) -> Result<bool> {
    let [x] = sys.unknowns.as_slice() else {
        return Err(Error::Invalid("containment check needs exactly one unknown".into()));
    };
    if !sys.is_solution(kappa)? {
        return Err(Error::Invalid(format!("{kappa} does not solve the system")));
    }
    let sigma = solve_boolean_system(sys)?
        .ok_or_else(|| Error::Invalid("solver found no solution to a solvable system".into()))?;
    let computed = eval_in_powerset(sigma.get(x).expect("unknown is mapped"), &sys.coefficients)?;
    Ok(kappa.get(x).expect("checked by is_solution").is_subset_of(computed))
}

/// A projective unifier of `f`: `a := (f & a) | (~f & c_a)` where `c_a` is
/// the value of `a` in the first satisfying assignment (variables in name
/// order, first variable most significant, false before true).
pub fn projective_unifier(f: &Formula) -> Result<Option<Substitution>> {
    if !f.is_propositional() {
        return Err(Error::NotPropositional(f.to_string()));
    }
    let vars: Vec<String> = f.variables().into_iter().collect();
    if vars.len() > MAX_ATOMS {
        return Err(Error::Resource(format!(
            "unifier search over {} variables exceeds the limit of {MAX_ATOMS}",
            vars.len()
        )));
    }
    let compiled = Atomized::new(f);
    let slot: Vec<usize> = compiled
        .atoms()
        .iter()
        .map(|a| match a {
            Formula::Var(x) => vars.iter().position(|y| y == x).expect("atom is a variable"),
            _ => unreachable!("propositional formula"),
        })
        .collect();
    let n = vars.len();
    let mut values = vec![false; compiled.atoms().len()];
    let mut found = None;
    for k in 0u64..(1u64 << n) {
        for (i, s) in slot.iter().enumerate() {
            values[i] = (k >> (n - 1 - s)) & 1 == 1;
        }
        if compiled.eval(&values) {
            found = Some(k);
            break;
        }
    }
    let Some(k) = found else {
        return Ok(None);
    };
    let sigma = vars
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let c = if (k >> (n - 1 - i)) & 1 == 1 { Formula::Top } else { Formula::Bot };
            let keep = Formula::and(f.clone(), Formula::var(a));
            let fallback = Formula::and(Formula::neg(f.clone()), c);
            (a.clone(), Formula::or(keep, fallback).simplify())
        })
        .collect();
    Ok(Some(sigma))
}

/// The axiom `psi sigma` equivalent to the rule `phi / psi`, with `sigma` a
/// projective unifier of `phi`; `Top` when `phi` is unsatisfiable.
pub fn rule_to_axiom(r: &Rule) -> Result<Formula> {
    Ok(match projective_unifier(&r.premiss)? {
        Some(sigma) => r.conclusion.apply_substitution(&sigma),
        None => Formula::Top,
    })
}

#[cfg(test)]
mod tests {
    use super::super::truth::is_tautology;
    use super::*;
    use crate::syntax::{parse_formula, Signature};

    fn v(x: &str) -> Formula {
        Formula::var(x)
    }

    fn brute_force_solvable(sys: &EquationSystem) -> bool {
        SetValuation::enumerate(&sys.unknowns, sys.base()).any(|k| sys.is_solution(&k).unwrap())
    }

    #[test]
    fn single_copy_equation() {
        let a = Subset::from_elems([0, 2]);
        let sys = EquationSystem::new(SetValuation::new(3).with("a", a), vec!["x".into()], vec![(v("x"), v("a"))]).unwrap();
        let sigma = solve_boolean_system(&sys).unwrap().unwrap();
        assert!(sys.is_solved_by(&sigma).unwrap());
        let x = eval_in_powerset(sigma.get("x").unwrap(), &sys.coefficients).unwrap();
        assert_eq!(x, a);
        assert!(sigma.get("x").unwrap().variables().iter().all(|y| y == "a"));
        assert!(check_part_ii(&sys, &SetValuation::new(3).with("x", a)).unwrap());
    }

    #[test]
    fn contradiction_has_no_solution() {
        let sys = EquationSystem::new(
            SetValuation::new(2),
            vec!["x".into()],
            vec![(Formula::and(v("x"), Formula::neg(v("x"))), Formula::Top)],
        )
        .unwrap();
        assert_eq!(solve_boolean_system(&sys).unwrap(), None);
        assert!(!brute_force_solvable(&sys));
    }

    #[test]
    fn empty_kappa_is_contained() {
        let sys = EquationSystem::new(
            SetValuation::new(2).with("a", Subset::singleton(1)),
            vec!["x".into()],
            vec![(Formula::and(v("x"), v("a")), v("x"))],
        )
        .unwrap();
        assert!(check_part_ii(&sys, &SetValuation::new(2).with("x", Subset::EMPTY)).unwrap());
        // x = a & x is solved by every subset of a
        assert!(check_part_ii(&sys, &SetValuation::new(2).with("x", Subset::singleton(1))).unwrap());
        assert!(check_part_ii(&sys, &SetValuation::new(2).with("x", Subset::singleton(0))).is_err());
    }

    #[test]
    fn two_unknowns() {
        // x | y = a, x & y = bot, x = b
        let tau = SetValuation::new(3)
            .with("a", Subset::from_elems([0, 1]))
            .with("b", Subset::singleton(0));
        let sys = EquationSystem::new(
            tau,
            vec!["x".into(), "y".into()],
            vec![
                (Formula::or(v("x"), v("y")), v("a")),
                (Formula::and(v("x"), v("y")), Formula::Bot),
                (v("x"), v("b")),
            ],
        )
        .unwrap();
        let sigma = solve_boolean_system(&sys).unwrap().unwrap();
        assert!(sys.is_solved_by(&sigma).unwrap());
        assert!(brute_force_solvable(&sys));
    }

    #[test]
    fn unifier_of_a_is_top() {
        let sigma = projective_unifier(&v("a")).unwrap().unwrap();
        assert!(is_tautology(sigma.get("a").unwrap()).unwrap());
        assert_eq!(projective_unifier(&Formula::Bot).unwrap(), None);
    }

    #[test]
    fn unifier_conditions_exhaustive_two_vars() {
        // every Boolean function of a, b given by its truth table in DNF
        let rows = [(false, false), (false, true), (true, false), (true, true)];
        let lit = |x: &str, b: bool| if b { v(x) } else { Formula::neg(v(x)) };
        for mask in 1u32..16 {
            let f = Formula::disj(
                rows.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &(a, b))| Formula::and(lit("a", a), lit("b", b))),
            );
            let sigma = projective_unifier(&f).unwrap().unwrap();
            assert!(is_tautology(&f.apply_substitution(&sigma)).unwrap(), "{f}");
            for x in ["a", "b"] {
                let cond = Formula::imp(f.clone(), Formula::iff(v(x), sigma.get(x).unwrap().clone()));
                assert!(is_tautology(&cond).unwrap(), "{f}");
            }
        }
    }

    #[test]
    fn congruence_rule_becomes_axiom() {
        let sig = Signature::from_pairs([("L", 1)]).unwrap();
        let rule = Rule::new(
            parse_formula("a <-> b", &sig).unwrap(),
            parse_formula("L a <-> L b", &sig).unwrap(),
        )
        .unwrap();
        let ax = rule_to_axiom(&rule).unwrap();
        let Formula::Iff(l, r) = &ax else { panic!("{ax}") };
        let (Formula::Apply(_, g), Formula::Apply(_, h)) = (&**l, &**r) else { panic!("{ax}") };
        assert!(is_tautology(&Formula::iff(g[0].clone(), h[0].clone())).unwrap());

        let psi = parse_formula("L a", &sig).unwrap();
        assert_eq!(rule_to_axiom(&Rule::new(Formula::Top, psi.clone()).unwrap()).unwrap(), psi);
        assert_eq!(rule_to_axiom(&Rule::new(Formula::Bot, psi).unwrap()).unwrap(), Formula::Top);
    }
}
