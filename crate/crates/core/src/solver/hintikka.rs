use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::prop::Atomized;
use crate::syntax::Formula;

/// Largest number of atoms [`hintikka_sets`] will case-split on.
pub const MAX_HINTIKKA_ATOMS: usize = 20;

/// A maximal propositionally consistent subset of a closed formula set,
/// with modal formulae treated as atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HintikkaSet(BTreeSet<Formula>);

impl HintikkaSet {
    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn members(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The atoms of a formula set: variables and modal subformulae that occur
/// in propositional position in some member.
fn atoms_of(sigma: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    sigma
        .iter()
        .flat_map(|f| Atomized::new(f).atoms().to_vec())
        .collect()
}

/// All maximal propositionally consistent subsets of `sigma`: one per truth
/// assignment to its atoms, enumerated with the first atom (in formula
/// order) most significant and `false` first, duplicates dropped.
pub fn hintikka_sets(sigma: &BTreeSet<Formula>) -> Result<Vec<HintikkaSet>> {
    let atoms: Vec<Formula> = atoms_of(sigma).into_iter().collect();
    if atoms.len() > MAX_HINTIKKA_ATOMS {
        return Err(Error::Resource(format!(
            "{} atoms exceed the limit of {MAX_HINTIKKA_ATOMS} for Hintikka sets",
            atoms.len()
        )));
    }
    let compiled: Vec<(Formula, Atomized, Vec<usize>)> = sigma
        .iter()
        .map(|f| {
            let a = Atomized::new(f);
            let slots = a
                .atoms()
                .iter()
                .map(|x| atoms.binary_search(x).expect("atom collected"))
                .collect();
            (f.clone(), a, slots)
        })
        .collect();
    let n = atoms.len();
    let mut out: Vec<HintikkaSet> = Vec::new();
    let mut seen = BTreeSet::new();
    for k in 0u64..(1u64 << n) {
        let value = |i: usize| (k >> (n - 1 - i)) & 1 == 1;
        let label: BTreeSet<Formula> = compiled
            .iter()
            .filter(|(_, a, slots)| a.eval(&slots.iter().map(|&s| value(s)).collect::<Vec<_>>()))
            .map(|(f, _, _)| f.clone())
            .collect();
        let h = HintikkaSet(label);
        if seen.insert(h.clone()) {
            out.push(h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_closed_formula, Signature};

    fn closure(text: &str) -> BTreeSet<Formula> {
        let mut sig = Signature::from_pairs([("Box", 1)]).unwrap();
        parse_closed_formula(text, &mut sig).unwrap().closure()
    }

    #[test]
    fn box_p_has_four() {
        let hs = hintikka_sets(&closure("Box p")).unwrap();
        assert_eq!(hs.len(), 4);
        let p = Formula::atom("p");
        let bp = Formula::apply("Box", vec![p.clone()]);
        for h in &hs {
            assert_eq!(h.len(), 2);
            assert!(h.contains(&p) != h.contains(&Formula::neg(p.clone())));
            assert!(h.contains(&bp) != h.contains(&Formula::neg(bp.clone())));
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(hintikka_sets(&closure("p")).unwrap().len(), 2);
        assert_eq!(hintikka_sets(&BTreeSet::new()).unwrap(), vec![HintikkaSet(BTreeSet::new())]);
        // p & ~p: every label omits the conjunction
        let hs = hintikka_sets(&closure("p & ~p")).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| !h.contains(&Formula::and(Formula::atom("p"), Formula::neg(Formula::atom("p"))))));
    }
}
