use proptest::prelude::*;

use nitlog::presets;
use nitlog::proofs::{check_derives, parse_proof};
use nitlog::solver::{sat_solve, SatResult, SolverConfig};
use nitlog::syntax::parse_closed_formula;
use nitlog::Formula;

/// Goals refuted in KT, each with a proof of its negation. Only the first
/// three are small enough for the full state bound.
const KT_REFUTATIONS: &[(&str, &str)] = &[
    ("Box p & ~p", "Box p -> p ; ax 2 {a:=p}\n~(Box p & ~p) ; pl 0\n"),
    ("~Box top", "Box top ; ax 0\n~~Box top ; pl 0\n"),
    (
        "Box(p & q) & ~q",
        "Box(p & q) -> p & q ; ax 2 {a:=p & q}\n~(Box(p & q) & ~q) ; pl 0\n",
    ),
    (
        "Box p & Box(p -> q) & ~q",
        "Box(p -> q) -> Box p -> Box q ; ax 1 {a:=p, b:=q}\nBox q -> q ; ax 2 {a:=q}\n~(Box p & Box(p -> q) & ~q) ; pl 0,1\n",
    ),
];

#[test]
fn certified_unsat_goals_have_checked_refutations() {
    let kt = presets::logic("kt").unwrap().unwrap();
    for (i, (goal, proof)) in KT_REFUTATIONS.iter().enumerate() {
        let mut sig = kt.sig.clone();
        let g = parse_closed_formula(goal, &mut sig).unwrap();
        let cfg = if i < 3 { SolverConfig::default().with_full_bound() } else { SolverConfig::default() };
        match sat_solve(&kt, &g, &cfg).unwrap() {
            SatResult::UnsatWithinBound { certified, .. } => assert_eq!(certified, i < 3, "{goal}"),
            other => panic!("{goal}: {other:?}"),
        }
        let p = parse_proof(proof, &kt).unwrap();
        check_derives(&kt, &[], &Formula::neg(g), &p).unwrap_or_else(|e| panic!("{goal}: {e}"));
    }
}

#[test]
fn refutable_goals_are_satisfiable_without_the_axiom() {
    let e = presets::logic("e").unwrap().unwrap();
    for (goal, _) in KT_REFUTATIONS {
        let mut sig = e.sig.clone();
        let g = parse_closed_formula(goal, &mut sig).unwrap();
        assert!(sat_solve(&e, &g, &SolverConfig::default()).unwrap().is_sat(), "{goal}");
    }
}

fn goal() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::atom("p")), Just(Formula::atom("q")), Just(Formula::Top)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.prop_map(|a| Formula::apply("Box", vec![a])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn more_states_never_lose_models(g in goal(), name in prop::sample::select(vec!["e", "m", "kt"])) {
        let l = presets::logic(name).unwrap().unwrap();
        let verdicts: Vec<bool> = (1..=3)
            .map(|n| sat_solve(&l, &g, &SolverConfig::default().with_max_states(n)).unwrap().is_sat())
            .collect();
        prop_assert!(verdicts.windows(2).all(|w| !w[0] || w[1]), "{}: {:?}", g, verdicts);
        let again = sat_solve(&l, &g, &SolverConfig::default().with_max_states(3)).unwrap();
        prop_assert_eq!(again.is_sat(), verdicts[2]);
    }
}

#[test]
fn oversized_full_bound_is_a_resource_error() {
    let kt = presets::logic("kt").unwrap().unwrap();
    let mut sig = kt.sig.clone();
    let g = parse_closed_formula(KT_REFUTATIONS[3].0, &mut sig).unwrap();
    let err = sat_solve(&kt, &g, &SolverConfig::default().with_full_bound()).unwrap_err();
    assert!(err.is_resource(), "{err}");
}
