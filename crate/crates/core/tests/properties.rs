use std::collections::BTreeMap;

use proptest::prelude::*;

use nitlog::prop::{eval_in_powerset, is_satisfiable, is_tautology, projective_unifier, solve_boolean_system};
use nitlog::prop::{EquationSystem, SetValuation};
use nitlog::semantics::{frame_satisfies, model_check, NeighbourhoodModel, DEFAULT_FRAME_CAP};
use nitlog::solver::{sat_solve, SatResult, SolverConfig};
use nitlog::step01::{FunctorElement, Step01Context};
use nitlog::syntax::{parse_formula, parse_logic, print_formula};
use nitlog::{Formula, Signature, Subset, Substitution};

fn sig() -> Signature {
    Signature::from_pairs([("Box", 1), ("O", 2), ("p", 0), ("q", 0)]).unwrap()
}

fn leaf(vars: &'static [&'static str], atoms: &'static [&'static str]) -> BoxedStrategy<Formula> {
    let mut options: Vec<BoxedStrategy<Formula>> = vec![Just(Formula::Top).boxed(), Just(Formula::Bot).boxed()];
    if !vars.is_empty() {
        options.push(prop::sample::select(vars).prop_map(Formula::var).boxed());
    }
    if !atoms.is_empty() {
        options.push(prop::sample::select(atoms).prop_map(Formula::atom).boxed());
    }
    prop::strategy::Union::new(options).boxed()
}

fn connectives(inner: BoxedStrategy<Formula>) -> BoxedStrategy<Formula> {
    prop_oneof![
        inner.clone().prop_map(Formula::neg),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
        (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
    ]
    .boxed()
}

fn modal_formula(vars: &'static [&'static str], atoms: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    leaf(vars, atoms).prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            3 => connectives(inner.clone()),
            1 => inner.clone().prop_map(|a| Formula::apply("Box", vec![a])),
            1 => (inner.clone(), inner).prop_map(|(a, b)| Formula::apply("O", vec![a, b])),
        ]
    })
}

fn prop_formula(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    leaf(vars, &[]).prop_recursive(4, 24, 2, connectives)
}

fn closed_box_formula() -> impl Strategy<Value = Formula> {
    leaf(&[], &["p", "q"]).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            3 => connectives(inner.clone()),
            1 => inner.prop_map(|a| Formula::apply("Box", vec![a])),
        ]
    })
}

/// A model over `Box`, `p`, `q` with 1..=3 states.
fn box_model() -> impl Strategy<Value = NeighbourhoodModel> {
    (1usize..=3).prop_flat_map(|n| {
        let subsets = 1u64 << n;
        (
            Just(n),
            prop::collection::vec(0..1u64 << subsets, n),
            0..subsets,
            0..subsets,
        )
            .prop_map(|(n, boxes, p, q)| build_model(n, &boxes, p, q))
    })
}

fn build_model(n: usize, boxes: &[u64], p: u64, q: u64) -> NeighbourhoodModel {
    let sig = Signature::from_pairs([("Box", 1), ("p", 0), ("q", 0)]).unwrap();
    let mut m = NeighbourhoodModel::new(sig, n).unwrap();
    for (x, &sys) in boxes.iter().enumerate() {
        for s in 0..1u64 << n {
            if sys >> s & 1 == 1 {
                m.add_neighbourhood("Box", x, vec![Subset(s)]).unwrap();
            }
        }
    }
    m.set_atom("p", Subset(p)).unwrap();
    m.set_atom("q", Subset(q)).unwrap();
    m
}

/// Kripke frames with reflexive successor sets: models of KT.
fn kt_model() -> impl Strategy<Value = NeighbourhoodModel> {
    (1usize..=3).prop_flat_map(|n| {
        let subsets = 1u64 << n;
        (Just(n), prop::collection::vec(0..subsets, n), 0..subsets, 0..subsets).prop_map(|(n, succ, p, q)| {
            let boxes: Vec<u64> = succ
                .iter()
                .enumerate()
                .map(|(x, &r)| {
                    let r = r | 1 << x;
                    (0..1u64 << n).filter(|&s| s & r == r).fold(0, |m, s| m | 1 << s)
                })
                .collect();
            build_model(n, &boxes, p, q)
        })
    })
}

fn truth_table(f: &Formula) -> bool {
    let vars: Vec<String> = f.variables().into_iter().collect();
    (0..1u32 << vars.len()).all(|code| {
        let v: BTreeMap<&str, bool> = vars.iter().enumerate().map(|(i, x)| (x.as_str(), code >> i & 1 == 1)).collect();
        tt(f, &v)
    })
}

fn tt(f: &Formula, v: &BTreeMap<&str, bool>) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Var(x) => v[x.as_str()],
        Formula::Neg(a) => !tt(a, v),
        Formula::And(a, b) => tt(a, v) && tt(b, v),
        Formula::Or(a, b) => tt(a, v) || tt(b, v),
        Formula::Imp(a, b) => !tt(a, v) || tt(b, v),
        Formula::Iff(a, b) => tt(a, v) == tt(b, v),
        Formula::Apply(..) => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(f in modal_formula(&["a", "b", "c"], &["p", "q"])) {
        let text = print_formula(&f);
        let back = parse_formula(&text, &sig()).unwrap();
        prop_assert_eq!(back, f, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_bounded_and_idempotent(f in modal_formula(&["a", "b"], &["p"])) {
        let c = f.closure();
        prop_assert!(c.len() <= 2 * f.size());
        prop_assert!(c.contains(&f));
        for g in &c {
            for h in g.closure() {
                prop_assert!(c.contains(&h), "{} not in closure", h);
            }
        }
    }

    #[test]
    fn relabelling_permutes_extensions(m in box_model(), f in closed_box_formula(), seed in any::<u64>()) {
        let n = m.size();
        let mut perm: Vec<usize> = (0..n).collect();
        // a seeded Fisher-Yates shuffle
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let image = Subset::from_elems(m.extension(&f).unwrap().iter().map(|x| perm[x]));
        prop_assert_eq!(m.relabel(&perm).extension(&f).unwrap(), image);
    }

    #[test]
    fn axiom_instances_hold_in_kt_frames(
        m in kt_model(),
        a in closed_box_formula(),
        b in closed_box_formula(),
    ) {
        let kt = parse_logic("mod Box 1\naxiom Box top\naxiom Box(a -> b) -> Box a -> Box b\naxiom Box a -> a\n").unwrap();
        let s = Substitution::new().with("a", a).with("b", b);
        for ax in kt.all_axioms().unwrap() {
            prop_assert!(frame_satisfies(&m, &ax, DEFAULT_FRAME_CAP).unwrap().holds());
            let inst = ax.apply_substitution(&s);
            for x in 0..m.size() {
                prop_assert!(model_check(&m, x, &inst).unwrap(), "{} fails at {}", inst, x);
            }
        }
    }

    #[test]
    fn frame_condition_matches_subfunctor_membership(m in box_model()) {
        let sig = Signature::from_pairs([("Box", 1)]).unwrap();
        for text in ["Box a -> a", "Box(a & b) -> Box a", "Box a & Box b -> Box(a & b)", "Box top"] {
            let ax = parse_formula(text, &sig).unwrap();
            let frame = frame_satisfies(&m, &ax, DEFAULT_FRAME_CAP).unwrap().holds();
            let mut msig = sig.clone();
            msig.declare("p", 0).unwrap();
            msig.declare("q", 0).unwrap();
            let ctx = Step01Context::new(msig, vec![ax.clone()], m.size()).unwrap();
            let members = (0..m.size())
                .all(|x| ctx.contains(&FunctorElement::of_state(&m, x).unwrap()).unwrap());
            prop_assert_eq!(frame, members, "{}", text);
        }
    }

    #[test]
    fn projective_unifier_contract(f in prop_formula(&["a", "b", "c", "d"])) {
        match projective_unifier(&f).unwrap() {
            None => prop_assert!(!is_satisfiable(&f).unwrap()),
            Some(sigma) => {
                prop_assert!(truth_table(&f.apply_substitution(&sigma)));
                for x in f.variables() {
                    let g = sigma.get(&x).cloned().unwrap_or_else(|| Formula::var(&x));
                    prop_assert!(truth_table(&Formula::imp(f.clone(), Formula::iff(Formula::var(&x), g))));
                }
            }
        }
    }

    #[test]
    fn boolean_solutions_use_coefficients_only(
        eq in prop_formula(&["a", "b", "x", "y"]),
        a in 0u64..16,
        b in 0u64..16,
    ) {
        let tau = SetValuation::new(4).with("a", Subset(a)).with("b", Subset(b));
        let sys = EquationSystem::new(tau.clone(), vec!["x".into(), "y".into()], vec![(eq.clone(), Formula::Top)]).unwrap();
        let brute = (0..256u64).any(|k| {
            let kappa = SetValuation::new(4).with("x", Subset(k & 15)).with("y", Subset(k >> 4));
            sys.is_solution(&kappa).unwrap()
        });
        match solve_boolean_system(&sys).unwrap() {
            None => prop_assert!(!brute),
            Some(sigma) => {
                prop_assert!(brute);
                for (_, g) in sigma.iter() {
                    prop_assert!(g.variables().iter().all(|v| v == "a" || v == "b"));
                }
                let solved = eq.apply_substitution(&sigma);
                prop_assert_eq!(eval_in_powerset(&solved, &tau).unwrap(), Subset::full(4));
            }
        }
    }

    #[test]
    fn tautologies_hold_everywhere_in_powersets(f in prop_formula(&["a", "b"]), a in 0u64..8, b in 0u64..8) {
        let tau = SetValuation::new(3).with("a", Subset(a)).with("b", Subset(b));
        if is_tautology(&f).unwrap() {
            prop_assert_eq!(eval_in_powerset(&f, &tau).unwrap(), Subset::full(3));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_models_are_genuine(f in closed_box_formula()) {
        let t = parse_logic("mod Box 1\naxiom Box a -> a\n").unwrap();
        match sat_solve(&t, &f, &SolverConfig::default()).unwrap() {
            SatResult::Satisfiable { model, witness } => {
                prop_assert!(model_check(&model, witness, &f).unwrap());
            }
            SatResult::UnsatWithinBound { .. } => {
                // no model with up to 3 states exists; spot-check by enumerating 1-state models
                for sys in 0..4u64 {
                    for p in 0..2 {
                        for q in 0..2 {
                            let m = build_model(1, &[sys], p, q);
                            let reflexive = sys & 1 == 0;
                            if reflexive {
                                prop_assert!(!model_check(&m, 0, &f).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
