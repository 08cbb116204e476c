//! Propositional reasoning: truth tables, powerset algebras and unifiers.

mod powerset;
mod truth;
mod unify;

pub use powerset::{eval_in_powerset, SetValuation};
pub use truth::{eval, is_satisfiable, is_tautology, pl_entails, Atomized, MAX_ATOMS};
pub use unify::{check_part_ii, projective_unifier, rule_to_axiom, solve_boolean_system, EquationSystem};
