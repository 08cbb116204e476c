//! Truth tables over atomized formulae.
//!
//! Variables and maximal modal subtrees are opaque atoms; syntactically
//! distinct modal subtrees are distinct atoms.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::syntax::Formula;

/// Largest number of atoms the truth-table engine accepts.
pub const MAX_ATOMS: usize = 30;

#[derive(Clone, Debug)]
enum Node {
    Const(bool),
    Atom(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
}

/// A formula compiled against an indexed atom table.
#[derive(Clone, Debug)]
pub struct Atomized {
    atoms: Vec<Formula>,
    root: Node,
}

impl Atomized {
    pub fn new(f: &Formula) -> Atomized {
        let mut index = HashMap::new();
        let mut atoms = Vec::new();
        let root = compile(f, &mut index, &mut atoms);
        Atomized { atoms, root }
    }

    pub fn atoms(&self) -> &[Formula] {
        &self.atoms
    }

    pub fn eval(&self, values: &[bool]) -> bool {
        eval_node(&self.root, values)
    }

    /// Evaluates 64 assignments at once; bit `j` of `words[i]` is the value
    /// of atom `i` in assignment `j`.
    fn eval_word(&self, words: &[u64]) -> u64 {
        eval_word(&self.root, words)
    }

    fn check_size(&self) -> Result<()> {
        if self.atoms.len() > MAX_ATOMS {
            return Err(Error::Resource(format!(
                "truth table over {} atoms exceeds the limit of {MAX_ATOMS}",
                self.atoms.len()
            )));
        }
        Ok(())
    }

    pub fn is_tautology(&self) -> Result<bool> {
        self.check_size()?;
        let n = self.atoms.len();
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let mask = if n >= 6 { u64::MAX } else { (1u64 << (1u64 << n)) - 1 };
        let chunks: u64 = if n > 6 { 1u64 << (n - 6) } else { 1 };
        let mut words = vec![0u64; n];
        for c in 0..chunks {
            for (i, w) in words.iter_mut().enumerate() {
                *w = if i < 6 {
                    PATTERNS[i]
                } else if (c >> (i - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
            }
            if self.eval_word(&words) & mask != mask {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First satisfying assignment, enumerating assignments in
    /// lexicographic order with `false < true` and atom 0 most significant.
    pub fn first_model(&self) -> Result<Option<Vec<bool>>> {
        self.check_size()?;
        let n = self.atoms.len();
        let mut values = vec![false; n];
        for k in 0u64..(1u64 << n) {
            for (i, v) in values.iter_mut().enumerate() {
                *v = (k >> (n - 1 - i)) & 1 == 1;
            }
            if self.eval(&values) {
                return Ok(Some(values));
            }
        }
        Ok(None)
    }
}

fn compile(f: &Formula, index: &mut HashMap<Formula, usize>, atoms: &mut Vec<Formula>) -> Node {
    let bin = |a: &Formula, b: &Formula, index: &mut HashMap<Formula, usize>, atoms: &mut Vec<Formula>| {
        (Box::new(compile(a, index, atoms)), Box::new(compile(b, index, atoms)))
    };
    match f {
        Formula::Bot => Node::Const(false),
        Formula::Top => Node::Const(true),
        Formula::Var(_) | Formula::Apply(..) => {
            let i = *index.entry(f.clone()).or_insert_with(|| {
                atoms.push(f.clone());
                atoms.len() - 1
            });
            Node::Atom(i)
        }
        Formula::Neg(a) => Node::Not(Box::new(compile(a, index, atoms))),
        Formula::And(a, b) => {
            let (a, b) = bin(a, b, index, atoms);
            Node::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b, index, atoms);
            Node::Or(a, b)
        }
        Formula::Imp(a, b) => {
            let (a, b) = bin(a, b, index, atoms);
            Node::Imp(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = bin(a, b, index, atoms);
            Node::Iff(a, b)
        }
    }
}

fn eval_node(n: &Node, v: &[bool]) -> bool {
    match n {
        Node::Const(b) => *b,
        Node::Atom(i) => v[*i],
        Node::Not(a) => !eval_node(a, v),
        Node::And(a, b) => eval_node(a, v) && eval_node(b, v),
        Node::Or(a, b) => eval_node(a, v) || eval_node(b, v),
        Node::Imp(a, b) => !eval_node(a, v) || eval_node(b, v),
        Node::Iff(a, b) => eval_node(a, v) == eval_node(b, v),
    }
}

fn eval_word(n: &Node, w: &[u64]) -> u64 {
    match n {
        Node::Const(b) => {
            if *b {
                u64::MAX
            } else {
                0
            }
        }
        Node::Atom(i) => w[*i],
        Node::Not(a) => !eval_word(a, w),
        Node::And(a, b) => eval_word(a, w) & eval_word(b, w),
        Node::Or(a, b) => eval_word(a, w) | eval_word(b, w),
        Node::Imp(a, b) => !eval_word(a, w) | eval_word(b, w),
        Node::Iff(a, b) => !(eval_word(a, w) ^ eval_word(b, w)),
    }
}

/// Evaluates `f` under an assignment of its atoms (variables and maximal
/// modal subtrees).
pub fn eval(f: &Formula, v: &BTreeMap<Formula, bool>) -> Result<bool> {
    let a = Atomized::new(f);
    let values = a
        .atoms()
        .iter()
        .map(|atom| v.get(atom).copied().ok_or_else(|| Error::Unassigned(atom.to_string())))
        .collect::<Result<Vec<bool>>>()?;
    Ok(a.eval(&values))
}

pub fn is_tautology(f: &Formula) -> Result<bool> {
    Atomized::new(f).is_tautology()
}

pub fn is_satisfiable(f: &Formula) -> Result<bool> {
    Ok(!is_tautology(&Formula::neg(f.clone()))?)
}

/// `premises ⊢_PL conclusion`, decided as validity of `⋀premises -> conclusion`.
pub fn pl_entails(premises: &[Formula], conclusion: &Formula) -> Result<bool> {
    let f = Formula::imp(Formula::conj(premises.iter().cloned()), conclusion.clone());
    is_tautology(&f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Formula {
        Formula::var(x)
    }

    #[test]
    fn small_examples() {
        let peirce = Formula::imp(Formula::imp(Formula::imp(v("a"), v("b")), v("a")), v("a"));
        assert!(is_tautology(&peirce).unwrap());
        assert!(!is_tautology(&Formula::imp(v("a"), v("b"))).unwrap());
        assert!(pl_entails(&[v("a"), Formula::imp(v("a"), v("b"))], &v("b")).unwrap());
        assert!(is_tautology(&Formula::or(v("a"), Formula::neg(v("a")))).unwrap());
        assert!(!is_tautology(&Formula::Bot).unwrap());
        assert!(is_tautology(&Formula::Top).unwrap());
    }

    #[test]
    fn eval_needs_every_atom() {
        let f = Formula::and(v("a"), Formula::atom("p"));
        let mut asg = BTreeMap::new();
        asg.insert(v("a"), true);
        assert!(matches!(eval(&f, &asg), Err(Error::Unassigned(_))));
        asg.insert(Formula::atom("p"), true);
        assert!(eval(&f, &asg).unwrap());
        assert!(!eval(&Formula::Bot, &BTreeMap::new()).unwrap());
    }

    #[test]
    fn modal_subtrees_are_opaque() {
        let bx = |f| Formula::apply("Box", vec![f]);
        // Box(a & b) and Box(b & a) are different atoms
        let f = Formula::iff(bx(Formula::and(v("a"), v("b"))), bx(Formula::and(v("b"), v("a"))));
        assert!(!is_tautology(&f).unwrap());
        let g = Formula::imp(bx(v("a")), bx(v("a")));
        assert!(is_tautology(&g).unwrap());
    }

    #[test]
    fn wide_tables_use_all_chunks() {
        // a0 & .. & a8 -> a8 is valid; a0 | .. | a8 is not (all-false row is the last checked bit of chunk 0)
        let vars: Vec<Formula> = (0..9).map(|i| v(&format!("a{i}"))).collect();
        assert!(is_tautology(&Formula::imp(Formula::conj(vars.clone()), vars[8].clone())).unwrap());
        assert!(!is_tautology(&Formula::disj(vars.clone())).unwrap());
        // false only when every atom is true, i.e. in the last chunk
        assert!(!is_tautology(&Formula::neg(Formula::conj(vars))).unwrap());
    }

    #[test]
    fn too_many_atoms_is_a_resource_error() {
        let f = Formula::disj((0..31).map(|i| v(&format!("x{i}"))));
        assert!(matches!(is_tautology(&f), Err(Error::Resource(_))));
    }

    #[test]
    fn first_model_is_lexicographic() {
        let f = Formula::or(v("a"), v("b"));
        // atoms in order of first occurrence: a, b; first model is a=F, b=T
        assert_eq!(Atomized::new(&f).first_model().unwrap(), Some(vec![false, true]));
        assert_eq!(Atomized::new(&Formula::Bot).first_model().unwrap(), None);
    }
}
