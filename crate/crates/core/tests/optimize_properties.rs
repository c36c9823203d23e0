mod common;

use common::instance;
use gpm_core::distributed::{assemble_border_balls, distributed_match, FragmentedGraph};
use gpm_core::generate::random_pattern;
use gpm_core::optimize::{connectivity_prune, dual_filter, match_plus_with};
use gpm_core::strong::{dual_sim_ball, extract_max_pg, match_strong_with};
use gpm_core::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimization_is_idempotent(seed in any::<u64>()) {
        let nodes = 1 + seed as usize % 15;
        let q = random_pattern(nodes, (seed / 15) as usize % 6, 1 + (seed / 97) as usize % 3, seed).unwrap();
        let m = min_q(&q);
        prop_assert!(m.pattern.node_count() <= q.node_count());
        for class in m.classes() {
            prop_assert!(class.iter().all(|&u| q.label(u) == q.label(class[0])));
        }
        let again = min_q(&m.pattern);
        prop_assert_eq!(again.class_of, (0..m.pattern.node_count()).collect::<Vec<_>>());
        prop_assert_eq!(again.pattern, m.pattern);
    }

    #[test]
    fn minimized_pattern_matches_the_same(seed in any::<u64>()) {
        let (q, g) = instance(seed, 6, 30);
        let m = min_q(&q);
        let s = dual_sim(&q, &g);
        let sm = dual_sim(&m.pattern, &g);
        prop_assert_eq!(m.lift_relation(&sm), s.clone());
        prop_assert_eq!(match_graph(m.pattern.graph(), &g, &sm), match_graph(q.graph(), &g, &s));
        let opts = MatchOptions { radius: Some(m.effective_radius), threads: 1 };
        let strong_m = match_strong_with(&m.pattern, &g, &opts);
        prop_assert_eq!(m.lift_result(&strong_m), match_strong(&q, &g));
    }

    #[test]
    fn filter_equals_scratch_on_every_ball(seed in any::<u64>()) {
        let (q, g) = instance(seed, 6, 40);
        let s = dual_sim(&q, &g);
        for w in g.nodes() {
            let ball = build_ball(&g, w, q.diameter()).unwrap();
            let s_w = dual_sim_ball(&q, &g, &ball);
            let scratch = extract_max_pg(&q, &ball, &s_w);
            let out = dual_filter(&q, &s, &ball);
            prop_assert_eq!(&out.perfect, &scratch);
            let mut pairs: Vec<_> = out.events.iter().map(|e| (e.pattern_node, e.data_node)).collect();
            let n = pairs.len();
            pairs.sort_unstable();
            pairs.dedup();
            prop_assert_eq!(pairs.len(), n);
            // pruning never changes the perfect subgraph
            prop_assert_eq!(extract_max_pg(&q, &ball, &connectivity_prune(&q, &ball, &s_w)), scratch.clone());
            // skipped centers would have produced nothing
            if !s.nodes().contains(&w) {
                prop_assert!(scratch.is_none());
            }
        }
    }

    #[test]
    fn plus_equals_plain(seed in any::<u64>()) {
        let (q, g) = instance(seed, 7, 60);
        for threads in [1, 3] {
            let opts = MatchOptions { radius: None, threads };
            let plus = match_plus_with(&q, &g, &opts);
            prop_assert_eq!(plus.lifted(), match_strong_with(&q, &g, &opts));
            prop_assert_eq!(plus.stats.balls_built + plus.stats.balls_skipped, g.node_count());
        }
    }

    #[test]
    fn partitions_reassemble(seed in any::<u64>(), k in 1usize..6) {
        let g = common::small_graph(seed, 40);
        let k = k.min(g.node_count());
        let f = FragmentedGraph::partition(&g, k, seed).unwrap();
        prop_assert_eq!(f.reassemble(), g.clone());
        let mut owned: Vec<NodeId> = f.fragments().iter().flat_map(|fr| fr.nodes.clone()).collect();
        owned.sort_unstable();
        prop_assert_eq!(owned, g.nodes().collect::<Vec<_>>());
        prop_assert!(f.fragments().iter().all(|fr| !fr.nodes.is_empty()));
    }

    #[test]
    fn assembled_balls_are_exact_and_bounded(seed in any::<u64>(), k in 1usize..5, radius in 0usize..4) {
        let g = common::small_graph(seed, 40);
        let k = k.min(g.node_count());
        let f = FragmentedGraph::partition(&g, k, seed ^ 1).unwrap();
        let (balls, ledger) = assemble_border_balls(&f, radius);
        let mut bound = 0;
        for (site, list) in balls.iter().enumerate() {
            prop_assert_eq!(list.iter().map(Ball::center).collect::<Vec<_>>(), f.border_centers(site));
            for b in list {
                prop_assert_eq!(b, &build_ball(&g, b.center(), radius).unwrap());
                bound += b.nodes().len();
            }
        }
        prop_assert!(ledger.total().nodes <= bound);
        if k == 1 {
            prop_assert!(ledger.is_empty());
        }
    }

    #[test]
    fn distributed_equals_centralized(seed in any::<u64>(), k in 1usize..5) {
        let (q, g) = instance(seed, 5, 40);
        let k = k.min(g.node_count());
        let f = FragmentedGraph::partition(&g, k, seed).unwrap();
        let (r, ledger) = distributed_match(&q, &f);
        prop_assert_eq!(r, match_strong(&q, &g));
        let crossing = f.fragments().iter().any(|fr| !fr.cross.is_empty());
        if !crossing || q.diameter() == 0 {
            prop_assert_eq!(ledger.total().nodes + ledger.total().edges, 0);
        }
    }
}

#[test]
fn absent_labels_short_circuit_match_plus() {
    let q = Pattern::new(LabeledDigraph::new(&["Q0", "Q1"], [(0, 1)]).unwrap()).unwrap();
    let (_, g) = instance(7, 3, 30);
    let out = match_plus_with(&q, &g, &MatchOptions::default());
    assert!(out.result.is_empty());
    assert_eq!(out.stats.balls_built, 0);
}
