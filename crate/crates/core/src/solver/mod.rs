//! Bounded satisfiability over finite neighbourhood frames that satisfy the
//! axioms of a logic as frame conditions.
//!
//! States of a candidate model are labelled with Hintikka sets of the
//! goal's closure. For a fixed list of distinct labels the extension of
//! every closure formula is determined, so each state's neighbourhood
//! systems can be searched for independently: a local propositional
//! problem over the membership bits of that state, containing every axiom
//! instance at the state plus the memberships its modal literals force.
//! Any model of the goal collapses onto its set of occurring labels
//! (pushing neighbourhoods forward along the labelling), so searching label
//! lists of length `m <= min(bound, #labels)` is exhaustive for models with
//! at most `bound` states.

mod hintikka;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::sat::{Cnf, Prepared};
use crate::semantics::{frame_satisfies, model_check, FrameCheck, NeighbourhoodModel, DEFAULT_FRAME_CAP};
use crate::step01::{instantiate, valuations_over, Layout};
use crate::subset::Subset;
use crate::syntax::{Formula, LogicPresentation, Signature};

pub use hintikka::{hintikka_sets, HintikkaSet, MAX_HINTIKKA_ATOMS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest model size searched unless `full_bound` is set.
    pub max_states: usize,
    /// Search up to `2^size(goal)` states, making an unsatisfiable verdict
    /// certified.
    pub full_bound: bool,
    /// Cap on membership bits of one state's neighbourhood systems.
    pub bit_cap: u64,
    /// Cap on axiom instances per state.
    pub instance_cap: u64,
    /// Cap on `valuations * states` when re-checking frame conditions.
    pub frame_cap: u64,
    /// Cap on branching steps of one local propositional search.
    pub max_decisions: u64,
    /// Cap on the number of local propositional searches in one run.
    pub max_local_solves: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_states: 3,
            full_bound: false,
            bit_cap: 1 << 14,
            instance_cap: 1 << 18,
            frame_cap: DEFAULT_FRAME_CAP,
            max_decisions: 1 << 22,
            max_local_solves: 1 << 20,
        }
    }
}

impl SolverConfig {
    pub fn with_max_states(mut self, n: usize) -> Self {
        self.max_states = n;
        self
    }

    pub fn with_full_bound(mut self) -> Self {
        self.full_bound = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable { model: NeighbourhoodModel, witness: usize },
    /// No model with at most `bound` states; `certified` when the bound
    /// reaches `2^size(goal)`, so the goal is unsatisfiable outright.
    UnsatWithinBound { bound: u64, certified: bool },
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable { .. })
    }
}

/// `2^size(goal)`, saturating.
pub fn size_bound(goal: &Formula) -> u64 {
    1u64.checked_shl(goal.size() as u32).unwrap_or(u64::MAX)
}

/// Searches for a model of `goal` with at most the configured number of
/// states whose frame satisfies every axiom of `logic`. Satisfiable results
/// are re-verified by model checking and frame checking before return.
pub fn sat_solve(logic: &LogicPresentation, goal: &Formula, cfg: &SolverConfig) -> Result<SatResult> {
    if cfg.max_states == 0 {
        return Err(Error::Invalid("max_states must be at least 1".into()));
    }
    if !goal.is_closed() {
        return Err(Error::NotClosed(goal.to_string()));
    }
    let mut sig = logic.sig.clone();
    sig.absorb(goal)?;
    let axioms = logic.all_axioms()?;
    let full = size_bound(goal);
    let bound = if cfg.full_bound { full } else { cfg.max_states as u64 };
    let unsat = SatResult::UnsatWithinBound {
        bound,
        certified: bound >= full,
    };
    if *goal == Formula::Bot {
        return Ok(SatResult::UnsatWithinBound { bound, certified: true });
    }

    let sigma = goal.closure();
    let labels = hintikka_sets(&sigma)?;
    let goal_labels: Vec<bool> = labels.iter().map(|h| h.contains(goal)).collect();
    if !goal_labels.iter().any(|&g| g) {
        return Ok(unsat);
    }
    let modal: Vec<&Formula> = sigma.iter().filter(|f| matches!(f, Formula::Apply(..))).collect();

    let top = (labels.len() as u64).min(bound) as usize;
    let mut budget = cfg.max_local_solves;
    for m in 1..=top {
        let mut local = LocalProblems::new(&sig, &axioms, m, cfg)?;
        let mut combo: Vec<usize> = (0..m).collect();
        loop {
            if combo.iter().any(|&i| goal_labels[i]) {
                let chosen: Vec<&HintikkaSet> = combo.iter().map(|&i| &labels[i]).collect();
                if let Some(model) = local.solve_all(&chosen, &sigma, &modal, &sig, &mut budget)? {
                    let witness = combo.iter().position(|&i| goal_labels[i]).expect("goal label present");
                    certify(&model, witness, goal, &axioms, cfg)?;
                    return Ok(SatResult::Satisfiable { model, witness });
                }
            }
            if !next_combination(&mut combo, labels.len()) {
                break;
            }
        }
    }
    Ok(unsat)
}

/// Satisfiability of the conjunction of `phis`.
pub fn check_consistent(logic: &LogicPresentation, phis: &[Formula], cfg: &SolverConfig) -> Result<SatResult> {
    sat_solve(logic, &Formula::conj(phis.iter().cloned()), cfg)
}

fn certify(
    model: &NeighbourhoodModel,
    witness: usize,
    goal: &Formula,
    axioms: &[Formula],
    cfg: &SolverConfig,
) -> Result<()> {
    if !model_check(model, witness, goal)? {
        return Err(Error::Certification(format!("goal `{goal}` fails at witness {witness}")));
    }
    for a in axioms {
        if let FrameCheck::Counterexample { valuation, state } = frame_satisfies(model, a, cfg.frame_cap)? {
            return Err(Error::Certification(format!(
                "axiom `{a}` fails at state {state} under {valuation}"
            )));
        }
    }
    Ok(())
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Local solutions keyed by state index and forced membership bits.
type Memo = HashMap<(usize, Vec<(usize, bool)>), Option<Vec<bool>>>;

/// The axiom constraints on one state of an `m`-state model, per state.
struct LocalProblems {
    layout: Layout,
    per_point: Vec<Prepared>,
    max_decisions: u64,
    memo: Memo,
}

impl LocalProblems {
    fn new(sig: &Signature, axioms: &[Formula], m: usize, cfg: &SolverConfig) -> Result<LocalProblems> {
        let layout = Layout::full(m, sig, cfg.bit_cap)?;
        let sets: Vec<Subset> = Subset::all(m).collect();
        let mut per_point: Vec<Cnf> = (0..m).map(|_| Cnf::new(layout.total())).collect();
        let mut count: u64 = 0;
        for a in axioms {
            let vars: Vec<String> = a.variables().into_iter().collect();
            let n = (sets.len() as u64).checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
            count = count.saturating_add(n);
            if count > cfg.instance_cap {
                return Err(Error::Resource(format!(
                    "axiom instances over {m} states exceed the cap of {}",
                    cfg.instance_cap
                )));
            }
            for tau in valuations_over(&vars, &sets, m) {
                let inst = instantiate(a, &tau)?;
                for (j, cnf) in per_point.iter_mut().enumerate() {
                    cnf.assert(inst.root.to_expr(&layout, j)?);
                }
            }
        }
        Ok(LocalProblems {
            layout,
            per_point: per_point.iter().map(Cnf::prepare).collect(),
            max_decisions: cfg.max_decisions,
            memo: HashMap::new(),
        })
    }

    /// Solves every state's problem for the label list `chosen` and
    /// assembles the model, or `None` if some state has no solution.
    fn solve_all(
        &mut self,
        chosen: &[&HintikkaSet],
        sigma: &BTreeSet<Formula>,
        modal: &[&Formula],
        sig: &Signature,
        budget: &mut u64,
    ) -> Result<Option<NeighbourhoodModel>> {
        let m = chosen.len();
        let ext: BTreeMap<&Formula, Subset> = sigma
            .iter()
            .map(|f| (f, Subset::from_elems((0..m).filter(|&j| chosen[j].contains(f)))))
            .collect();
        let mut solutions = Vec::with_capacity(m);
        for (j, label) in chosen.iter().enumerate() {
            let mut forced: BTreeMap<usize, bool> = BTreeMap::new();
            for f in modal {
                let Formula::Apply(name, args) = f else { unreachable!() };
                let tuple: Vec<Subset> = args.iter().map(|g| ext[g]).collect();
                let bit = self.layout.bit(name, &tuple)?;
                let want = label.contains(f);
                if *forced.entry(bit).or_insert(want) != want {
                    return Ok(None);
                }
            }
            let key = (j, forced.into_iter().collect::<Vec<_>>());
            let found = match self.memo.get(&key) {
                Some(r) => r.clone(),
                None => {
                    if *budget == 0 {
                        return Err(Error::Resource(
                            "local propositional searches exceed the configured limit".into(),
                        ));
                    }
                    *budget -= 1;
                    let r = self.per_point[j].solve_under(&key.1, self.max_decisions)?;
                    self.memo.insert(key, r.clone());
                    r
                }
            };
            match found {
                Some(bits) => solutions.push(bits),
                None => return Ok(None),
            }
        }
        let mut model = NeighbourhoodModel::new(sig.clone(), m)?;
        for (j, bits) in solutions.iter().enumerate() {
            let t = self.layout.element(j, bits);
            for md in sig.iter() {
                for tuple in t.system(&md.name) {
                    model.add_neighbourhood(&md.name, j, tuple.clone())?;
                }
            }
        }
        Ok(Some(model))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_closed_formula, parse_logic};

    fn logic(text: &str) -> LogicPresentation {
        parse_logic(text).unwrap()
    }

    fn goal(l: &LogicPresentation, text: &str) -> Formula {
        let mut sig = l.sig.clone();
        parse_closed_formula(text, &mut sig).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn free_box_is_satisfiable_in_one_state() {
        let l = logic("mod Box 1\n");
        let g = goal(&l, "Box p & ~p");
        let SatResult::Satisfiable { model, witness } = sat_solve(&l, &g, &SolverConfig::default()).unwrap() else {
            panic!("expected a model");
        };
        assert_eq!(model.size(), 1);
        assert_eq!(witness, 0);
        assert!(model.neighbourhoods("Box", 0).unwrap().contains(&vec![Subset::EMPTY]));
        assert_eq!(model.extension(&Formula::atom("p")).unwrap(), Subset::EMPTY);
    }

    #[test]
    fn t_refutes_box_p_and_not_p() {
        let l = logic("mod Box 1\naxiom Box a -> a\n");
        let g = goal(&l, "Box p & ~p");
        assert_eq!(
            sat_solve(&l, &g, &SolverConfig::default()).unwrap(),
            SatResult::UnsatWithinBound { bound: 3, certified: false }
        );
        assert_eq!(
            sat_solve(&l, &g, &SolverConfig::default().with_full_bound()).unwrap(),
            SatResult::UnsatWithinBound { bound: 16, certified: true }
        );
    }

    #[test]
    fn empty_system_refutes_box_top() {
        let l = logic("mod Box 1\n");
        let g = goal(&l, "~Box top");
        let SatResult::Satisfiable { model, .. } = sat_solve(&l, &g, &SolverConfig::default()).unwrap() else {
            panic!("expected a model");
        };
        assert!(model.neighbourhoods("Box", 0).unwrap().is_empty());
    }

    #[test]
    fn consistency() {
        let l = logic("mod Box 1\n");
        let cfg = SolverConfig::default();
        let r = check_consistent(&l, &[Formula::Top], &cfg).unwrap();
        assert!(matches!(r, SatResult::Satisfiable { ref model, .. } if model.size() == 1));
        let p = Formula::atom("p");
        let r = check_consistent(&l, &[p.clone(), Formula::neg(p)], &cfg.clone().with_full_bound()).unwrap();
        assert!(matches!(r, SatResult::UnsatWithinBound { certified: true, .. }));
        assert_eq!(
            sat_solve(&l, &Formula::Bot, &cfg).unwrap(),
            SatResult::UnsatWithinBound { bound: 3, certified: true }
        );
    }

    #[test]
    fn needs_two_states() {
        // under T, Box q forces q here, so ext(q) = ext(p) in any one-state model
        let l = logic("mod Box 1\naxiom Box a -> a\n");
        let g = goal(&l, "p & Box q & ~Box p");
        let SatResult::Satisfiable { model, .. } = sat_solve(&l, &g, &SolverConfig::default()).unwrap() else {
            panic!("expected a model");
        };
        assert_eq!(model.size(), 2);
        let g = goal(&l, "p & Box ~p");
        assert!(!sat_solve(&l, &g, &SolverConfig::default()).unwrap().is_sat());
    }
}
