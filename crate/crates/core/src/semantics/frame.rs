use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::syntax::Formula;

use super::model::{NeighbourhoodModel, Valuation};

/// Default bound on `valuations * states` explored by [`frame_satisfies`].
pub const DEFAULT_FRAME_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameCheck {
    Holds,
    /// The first failing valuation (variables in name order, first variable
    /// most significant, sets ordered by bitmask) and the first state at
    /// which the axiom fails under it.
    Counterexample { valuation: Valuation, state: usize },
}

impl FrameCheck {
    pub fn holds(&self) -> bool {
        matches!(self, FrameCheck::Holds)
    }
}

/// Checks `axiom` as a frame condition: it must hold at every state under
/// every valuation of its variables. Nullary modalities keep their
/// interpretation in `m`.
pub fn frame_satisfies(m: &NeighbourhoodModel, axiom: &Formula, cap: u64) -> Result<FrameCheck> {
    if !axiom.classify().is_non_iterative() {
        return Err(Error::Iterative(axiom.to_string()));
    }
    let vars: Vec<String> = axiom.variables().into_iter().collect();
    let work = Valuation::count(vars.len(), m.size()).saturating_mul(m.size() as u64);
    if work > cap {
        return Err(Error::Resource(format!(
            "frame check of `{axiom}` needs {work} evaluations, over the cap of {cap}"
        )));
    }
    let all = Subset::full(m.size());
    for pi in Valuation::enumerate(&vars, m.size()) {
        let ext = m.extension_with(&pi, axiom)?;
        if ext != all {
            let state = all.intersection(ext.complement(m.size())).iter().next().expect("nonempty");
            return Ok(FrameCheck::Counterexample { valuation: pi, state });
        }
    }
    Ok(FrameCheck::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Signature};

    fn t_axiom() -> Formula {
        parse_formula("Box a -> a", &Signature::from_pairs([("Box", 1)]).unwrap()).unwrap()
    }

    #[test]
    fn reflexive_neighbourhoods_satisfy_t() {
        let sig = Signature::from_pairs([("Box", 1)]).unwrap();
        let mut m = NeighbourhoodModel::new(sig, 2).unwrap();
        m.add_neighbourhood("Box", 0, vec![Subset::from_elems([0])]).unwrap();
        m.add_neighbourhood("Box", 0, vec![Subset::from_elems([0, 1])]).unwrap();
        m.add_neighbourhood("Box", 1, vec![Subset::from_elems([1])]).unwrap();
        assert!(frame_satisfies(&m, &t_axiom(), DEFAULT_FRAME_CAP).unwrap().holds());
        assert!(frame_satisfies(&m, &Formula::Top, DEFAULT_FRAME_CAP).unwrap().holds());
    }

    #[test]
    fn empty_neighbourhood_refutes_t() {
        let sig = Signature::from_pairs([("Box", 1)]).unwrap();
        let mut m = NeighbourhoodModel::new(sig, 2).unwrap();
        m.add_neighbourhood("Box", 1, vec![Subset::EMPTY]).unwrap();
        let got = frame_satisfies(&m, &t_axiom(), DEFAULT_FRAME_CAP).unwrap();
        assert_eq!(
            got,
            FrameCheck::Counterexample {
                valuation: Valuation::new(2).with("a", Subset::EMPTY),
                state: 1
            }
        );
    }

    #[test]
    fn cap_is_enforced() {
        let sig = Signature::from_pairs([("Box", 1)]).unwrap();
        let m = NeighbourhoodModel::new(sig, 3).unwrap();
        let err = frame_satisfies(&m, &t_axiom(), 10).unwrap_err();
        assert!(err.is_resource());
    }
}
