use acyclic_lab::graph::dimacs;
use acyclic_lab::solver::{solve, solve_by_search, ColouringKind, Decision, SolveBudget};
use acyclic_lab::symmetry::{automorphisms, canonical_under_swaps, count_classes, Caps, ColourPermutation, Relation};
use acyclic_lab::{is_acyclic_colouring, is_proper, Colouring, Graph};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn brute_force(g: &Graph, k: usize, kind: ColouringKind) -> bool {
    let n = g.n();
    let total = (k as u64).pow(n as u32);
    (0..total).any(|mut code| {
        let colours: Vec<usize> = (0..n)
            .map(|_| {
                let c = (code % k as u64) as usize;
                code /= k as u64;
                c
            })
            .collect();
        let f = Colouring::new(k, colours).unwrap();
        match kind {
            ColouringKind::Proper => is_proper(g, &f).unwrap(),
            ColouringKind::Acyclic => is_acyclic_colouring(g, &f),
        }
    })
}

fn kinds() -> impl Strategy<Value = ColouringKind> {
    prop_oneof![Just(ColouringKind::Proper), Just(ColouringKind::Acyclic)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn solver_matches_brute_force(g in graph_strategy(6), k in 1usize..=3, kind in kinds()) {
        let expected = brute_force(&g, k, kind);
        for solved in [
            solve(&g, k, kind, SolveBudget::unlimited()).unwrap(),
            solve_by_search(&g, k, kind, SolveBudget::unlimited()).unwrap(),
        ] {
            prop_assert_eq!(solved.decision.is_yes(), expected);
            prop_assert_ne!(&solved.decision, &Decision::Unknown);
        }
    }

    #[test]
    fn colourability_is_monotone(g in graph_strategy(8), k in 1usize..=4) {
        let small = solve(&g, k, ColouringKind::Acyclic, SolveBudget::unlimited()).unwrap();
        let large = solve(&g, k + 1, ColouringKind::Acyclic, SolveBudget::unlimited()).unwrap();
        if small.decision.is_yes() {
            prop_assert!(large.decision.is_yes());
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_swap_invariant(
        colours in proptest::collection::vec(0usize..4, 0..10),
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let f = Colouring::new(4, colours).unwrap();
        let canon = canonical_under_swaps(&f);
        prop_assert_eq!(&canonical_under_swaps(&canon), &canon);
        let swapped = ColourPermutation::new(perm).unwrap().apply(&f).unwrap();
        prop_assert_eq!(canonical_under_swaps(&swapped), canon);
    }

    #[test]
    fn automorphisms_form_a_group(g in graph_strategy(6)) {
        let auts = automorphisms(&g, 1000).unwrap();
        let mut maps: Vec<Vec<usize>> = auts.iter().map(|a| a.as_slice().to_vec()).collect();
        maps.sort();
        prop_assert!(maps.binary_search(&(0..g.n()).collect()).is_ok());
        for a in &auts {
            prop_assert!(maps.binary_search(&a.inverse().as_slice().to_vec()).is_ok());
            for b in &auts {
                prop_assert!(maps.binary_search(&a.compose(b).as_slice().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn class_counts_are_sandwiched(g in graph_strategy(6), k in 1usize..=3) {
        let caps = Caps::default();
        let swap = count_classes(&g, k, Relation::Swap, ColouringKind::Acyclic, &caps).unwrap();
        let auto = count_classes(&g, k, Relation::SwapAuto, ColouringKind::Acyclic, &caps).unwrap();
        let group = automorphisms(&g, 1000).unwrap().len() as u64;
        let factorial: u64 = (1..=k as u64).product();
        prop_assert!(auto.count <= swap.count);
        prop_assert!(swap.count <= swap.colourings);
        prop_assert!(swap.colourings <= swap.count * factorial);
        prop_assert!(swap.count <= auto.count * group);
        prop_assert_eq!(swap.count == 0, !brute_force(&g, k, ColouringKind::Acyclic));
    }

    #[test]
    fn dimacs_round_trip(g in graph_strategy(9)) {
        let back = dimacs::parse(&dimacs::write(&g, &["round trip"])).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }
}
