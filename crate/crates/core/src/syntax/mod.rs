//! Formulae, similarity types and logic presentations.

mod formula;
mod logic;
mod parser;
mod printer;

pub use formula::{Formula, Modality, Rank, Signature, Substitution};
pub use logic::{logic_rank, parse_logic, write_logic, LogicPresentation, Rule};
pub use parser::{parse_closed_formula, parse_formula, parse_formula_inferring};
pub use printer::print_formula;
