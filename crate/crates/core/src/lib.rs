//! Workbench for syntactically presented non-iterative modal logics.
//!
//! A logic is a similarity type (modal operators with arities, nullary
//! operators doubling as propositional atoms) together with axioms that do
//! not nest modal operators. The crate provides:
//!
//! - [`syntax`]: formulae, logic presentations, parsing and printing.
//! - [`prop`]: truth tables, Boolean equation solving over powerset
//!   algebras, projective unifiers and rule-to-axiom conversion.
//! - [`semantics`]: finite neighbourhood models and frame conditions.
//! - [`step01`]: the 0-1-step layer over a finite base set.
//! - [`proofs`]: a checker for Hilbert derivations.
//! - [`solver`]: bounded satisfiability over frames satisfying the axioms.

pub mod error;
pub mod presets;
pub mod prop;
pub mod proofs;
mod sat;
pub mod semantics;
pub mod solver;
pub mod step01;
pub mod subset;
pub mod syntax;

pub use error::{Error, Result};
pub use subset::Subset;
pub use syntax::{Formula, LogicPresentation, Modality, Rank, Rule, Signature, Substitution};
