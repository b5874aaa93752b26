mod common;

use common::*;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use snc_core::analysis::{is_indecomposable, FieldBox};
use snc_core::dynamics::{
    simulate, validate_br_path, SimulationConfig, Termination, TransitionGraph,
};
use snc_core::game::SncGame;
use snc_core::{Action, Profile, ProfileSet, Weight};

/// Whether `i` can switch at `x` to a different best response.
fn can_move(g: &SncGame, i: usize, x: Profile) -> bool {
    utility_oracle(g, i, x.flipped(i)) >= utility_oracle(g, i, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn simulation_is_deterministic_and_follows_edges(
        g in game(1, 7, true, false),
        seed in any::<u64>(),
        start in any::<u64>(),
    ) {
        let n = g.node_count();
        let x0 = Profile::from_bits(start & ((1 << n) - 1));
        let config = SimulationConfig::new(seed, 300);
        let a = simulate(&g, x0, &config).unwrap();
        prop_assert_eq!(&a, &simulate(&g, x0, &config).unwrap());

        let graph = TransitionGraph::build(&g, n).unwrap();
        let mut cur = x0;
        let mut last_time = 0;
        for e in &a.events {
            prop_assert!(e.time > last_time);
            prop_assert!(graph.has_edge(cur, e.deviator));
            prop_assert_eq!(e.profile, cur.flipped(e.deviator));
            cur = e.profile;
            last_time = e.time;
        }
        match a.termination {
            Termination::FixedPoint => prop_assert!(is_strict_nash_oracle(&g, cur)),
            Termination::Budget => prop_assert_eq!(a.steps, 300),
            Termination::Absorbed => prop_assert!(false, "no stop set was given"),
        }
    }

    #[test]
    fn transition_graph_matches_best_responses(g in game(1, 7, true, false)) {
        let n = g.node_count();
        let graph = TransitionGraph::build(&g, n).unwrap();
        let mut edges = 0;
        for x in profiles(n) {
            for i in 0..n {
                prop_assert_eq!(graph.has_edge(x, i), can_move(&g, i, x));
                edges += can_move(&g, i, x) as usize;
            }
        }
        prop_assert_eq!(graph.edge_count(), edges);
        let sinks: Vec<Profile> = graph.sinks().iter().collect();
        let strict: Vec<Profile> = profiles(n).filter(|&x| is_strict_nash_oracle(&g, x)).collect();
        prop_assert_eq!(sinks, strict);
    }

    #[test]
    fn closures_and_invariant_cores(g in game(1, 6, true, false), pick in any::<u64>()) {
        let n = g.node_count();
        let graph = TransitionGraph::build(&g, n).unwrap();
        let target = ProfileSet::from_predicate(n, |x| pick >> (x.bits() % 64) & 1 == 1);
        let back = graph.backward_closure(&target).unwrap();
        for x in profiles(n) {
            let path = graph.shortest_path(x, &target).unwrap();
            prop_assert_eq!(back.contains(x), path.is_some());
            if let Some(p) = path {
                prop_assert!(validate_br_path(&g, &p));
                prop_assert!(target.contains(p.end().unwrap()));
            }
        }
        let core = graph.max_invariant_subset(&target).unwrap();
        prop_assert!(core.is_subset(&target));
        prop_assert!(graph.is_br_invariant(&core).unwrap());
        let forward = graph.forward_closure(&core).unwrap();
        prop_assert_eq!(forward, core.clone());
        match graph.invariance_violation(&target).unwrap() {
            None => prop_assert_eq!(core, target),
            Some(e) => {
                prop_assert!(target.contains(e.from) && !target.contains(e.to));
                prop_assert_eq!(e.to, e.from.flipped(e.deviator));
            }
        }
    }
}

/// Dense unsigned networks, where indecomposability is common.
fn unsigned_game_strategy() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (2usize..=7).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(prop_oneof![1 => Just(0i64), 3 => 1..=3i64], n * n),
            proptest::collection::vec(0i64..=2, n),
        )
    })
}

#[test]
fn consensus_is_reachable_within_n_steps_on_indecomposable_networks() {
    let mut runner = TestRunner::deterministic();
    let strategy = unsigned_game_strategy();
    let mut instances = 0;
    for _ in 0..400 {
        let (n, w, bound) = strategy.new_tree(&mut runner).unwrap().current();
        let net = network_from(n, &w, false);
        let plus = field_from(&bound);
        let fbox = FieldBox::symmetric(plus.clone()).unwrap();
        if !is_indecomposable(&net, &fbox, n).unwrap().indecomposable {
            continue;
        }
        instances += 1;
        let minus: Vec<Weight> = plus.iter().map(|v| -v.clone()).collect();
        let mixed: Vec<Weight> = plus
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
            .collect();
        let consensus = ProfileSet::from_profiles(
            n,
            [
                Profile::consensus(n, Action::Plus),
                Profile::consensus(n, Action::Minus),
            ],
        );
        for h in [vec![Weight::zero(); n], plus.clone(), minus, mixed] {
            let g = SncGame::new(net.clone(), h).unwrap();
            let graph = TransitionGraph::build(&g, n).unwrap();
            for x in profiles(n) {
                let path = graph
                    .shortest_path(x, &consensus)
                    .unwrap()
                    .expect("consensus reachable");
                assert!(
                    path.len() <= n,
                    "path of length {} on {n} nodes",
                    path.len()
                );
            }
            let nash = g.enumerate_nash(n).unwrap().all;
            assert!(nash.iter().all(|x| consensus.contains(*x)));
        }
    }
    assert!(instances >= 20, "only {instances} indecomposable instances");
}
