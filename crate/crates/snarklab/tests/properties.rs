//! Property tests over random cubic graphs and random profiles.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use snarklab::bits::EdgeSet;
use snarklab::certify::{
    cyclic_edge_connectivity_at_least, is_three_edge_colorable, verify_coloring,
};
use snarklab::formats::{
    emit_adjacency_text, emit_graph6, parse_adjacency_text, parse_graph6_line,
};
use snarklab::graph::CubicGraph;
use snarklab::hist::{find_hist, outer_cycles, OuterCycleProfile};
use snarklab::realizer::{is_admissible, realize};

/// Random connected simple cubic graph from a seed (pairing model).
fn random_cubic(n: usize, seed: u64) -> CubicGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let mut seen = std::collections::HashSet::new();
        if pairs
            .iter()
            .all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
        {
            if let Ok(g) = CubicGraph::from_edge_list(n, &pairs) {
                if g.is_connected() {
                    return g;
                }
            }
        }
    }
}

fn cubic_graph_strategy() -> impl Strategy<Value = CubicGraph> {
    (
        prop_oneof![Just(6usize), Just(8), Just(10), Just(12), Just(14)],
        any::<u64>(),
    )
        .prop_map(|(n, seed)| random_cubic(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_sum_is_three_n(g in cubic_graph_strategy()) {
        prop_assert_eq!(2 * g.edge_count(), 3 * g.n());
    }

    #[test]
    fn components_partition_the_vertex_set(g in cubic_graph_strategy(), mask in any::<u64>()) {
        let removed = EdgeSet::from_iter(
            g.edge_count(),
            (0..g.edge_count()).filter(|i| mask >> (i % 64) & 1 == 1),
        );
        let comps = g.connected_components(&removed);
        let mut seen = vec![false; g.n()];
        for comp in &comps {
            for v in comp.iter() {
                prop_assert!(!seen[v], "vertex {} in two components", v);
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn graph6_and_paper_round_trip(g in cubic_graph_strategy()) {
        let g6 = emit_graph6(&g);
        let back = parse_graph6_line(&g6).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        let text = emit_adjacency_text(&g);
        let back = parse_adjacency_text(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn coloring_witnesses_are_proper(g in cubic_graph_strategy()) {
        let (ok, witness) = is_three_edge_colorable(&g);
        match witness {
            Some(w) => {
                prop_assert!(ok);
                prop_assert!(verify_coloring(&g, &w));
            }
            None => prop_assert!(!ok),
        }
    }

    #[test]
    fn cyclic_connectivity_is_monotone(g in cubic_graph_strategy()) {
        let (ok5, _) = cyclic_edge_connectivity_at_least(&g, 5);
        let (ok4, witness4) = cyclic_edge_connectivity_at_least(&g, 4);
        if ok5 {
            prop_assert!(ok4);
        }
        if let Some(cut) = witness4 {
            prop_assert!(cut.len() < 4);
            // Removing the witness leaves at least two components with
            // a cycle each.
            let cut_set = EdgeSet::from_iter(
                g.edge_count(),
                cut.iter().map(|e| g.edge_index(e.u, e.v).unwrap()),
            );
            let comps = g.connected_components(&cut_set);
            let cyclic = comps.iter().filter(|c| g.contains_cycle(c)).count();
            prop_assert!(cyclic >= 2);
        }
    }

    #[test]
    fn hists_satisfy_the_leaf_identities(g in cubic_graph_strategy()) {
        if let Some(h) = find_hist(&g).unwrap() {
            let leaves = h.leaves(&g).count();
            let internal = h.internal_vertices(&g).count();
            prop_assert_eq!(leaves, g.n() / 2 + 1);
            prop_assert_eq!(leaves, internal + 2);
            let (cycles, profile) = outer_cycles(&g, &h).unwrap();
            prop_assert_eq!(profile.sum(), g.n() / 2 + 1);
            // Cycles partition the non-tree edges.
            let mut covered = EdgeSet::new(g.edge_count());
            for c in &cycles {
                prop_assert!(covered.is_disjoint(c));
                covered.union_with(c);
            }
            prop_assert_eq!(covered.count(), g.edge_count() - (g.n() - 1));
            for i in covered.iter() {
                prop_assert!(!h.tree_edges().contains(i));
            }
        }
    }

    /// Realization envelope: any admissible profile with elements up to
    /// 20 and at most 5 entries is realized exactly (profile recomputed
    /// from scratch).
    #[test]
    fn realize_envelope(raw in proptest::collection::vec(5usize..=20, 1..=5)) {
        let spec = OuterCycleProfile::new(raw);
        prop_assume!(is_admissible(&spec).0);
        let out = realize(&spec).unwrap();
        let (_, recomputed) = outer_cycles(&out.graph, &out.hist).unwrap();
        prop_assert_eq!(recomputed, spec.clone());
        prop_assert_eq!(out.graph.n(), 2 * (spec.sum() - 1));
    }

    #[test]
    fn inadmissible_profiles_always_error(k in 1usize..5) {
        let spec = OuterCycleProfile::new([k]);
        prop_assert!(realize(&spec).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The cut search is exactly as strong as brute-force enumeration
    /// of all small cuts (size < 4) with the two-cyclic-sides test.
    #[test]
    fn cut_search_matches_naive_enumeration(g in cubic_graph_strategy()) {
        fn naive_at_least_4(g: &CubicGraph) -> bool {
            let mut ids: Vec<usize> = Vec::new();
            fn qualifies(g: &CubicGraph, ids: &[usize]) -> bool {
                let cut = EdgeSet::from_iter(g.edge_count(), ids.iter().copied());
                let comps = g.connected_components(&cut);
                comps.len() >= 2 && comps.iter().filter(|c| g.contains_cycle(c)).count() >= 2
            }
            fn rec(g: &CubicGraph, ids: &mut Vec<usize>, start: usize, left: usize) -> bool {
                if qualifies(g, ids) {
                    return false;
                }
                if left == 0 {
                    return true;
                }
                for e in start..g.edge_count() {
                    ids.push(e);
                    if !rec(g, ids, e + 1, left - 1) {
                        return false;
                    }
                    ids.pop();
                }
                true
            }
            rec(g, &mut ids, 0, 3)
        }
        let (fast, witness) = cyclic_edge_connectivity_at_least(&g, 4);
        prop_assert_eq!(fast, naive_at_least_4(&g));
        if let Some(cut) = witness {
            // The witness has minimum size among violating cuts.
            for smaller in 0..cut.len() {
                let ok = {
                    fn any_of_size(g: &CubicGraph, ids: &mut Vec<usize>, start: usize, left: usize) -> bool {
                        if left == 0 {
                            let cut = EdgeSet::from_iter(g.edge_count(), ids.iter().copied());
                            let comps = g.connected_components(&cut);
                            return comps.len() >= 2
                                && comps.iter().filter(|c| g.contains_cycle(c)).count() >= 2;
                        }
                        for e in start..g.edge_count() {
                            ids.push(e);
                            if any_of_size(g, ids, e + 1, left - 1) {
                                return true;
                            }
                            ids.pop();
                        }
                        false
                    }
                    any_of_size(&g, &mut Vec::new(), 0, smaller)
                };
                prop_assert!(!ok, "a violating cut smaller than the witness exists");
            }
        }
    }

    /// Exhaustive Hist enumeration agrees with counting degree-{1,3}
    /// spanning trees directly.
    #[test]
    fn hist_count_matches_spanning_tree_enumeration(
        (n, seed) in (prop_oneof![Just(6usize), Just(8), Just(10)], any::<u64>())
    ) {
        let g = random_cubic(n, seed);
        fn count_hist_trees(g: &CubicGraph, e: usize, chosen: &mut Vec<usize>, deg: &mut Vec<usize>) -> usize {
            let n = g.n();
            if chosen.len() == n - 1 {
                let mut uf: Vec<usize> = (0..n).collect();
                fn find(uf: &mut [usize], mut x: usize) -> usize {
                    while uf[x] != x { uf[x] = uf[uf[x]]; x = uf[x]; }
                    x
                }
                for &i in chosen.iter() {
                    let er = g.edge(i);
                    let (a, b) = (find(&mut uf, er.u), find(&mut uf, er.v));
                    if a == b { return 0; }
                    uf[a] = b;
                }
                return usize::from(deg.iter().all(|&d| d == 1 || d == 3));
            }
            if e == g.edge_count() || g.edge_count() - e < n - 1 - chosen.len() {
                return 0;
            }
            let mut total = 0;
            let er = g.edge(e);
            chosen.push(e);
            deg[er.u] += 1;
            deg[er.v] += 1;
            if deg[er.u] <= 3 && deg[er.v] <= 3 {
                total += count_hist_trees(g, e + 1, chosen, deg);
            }
            deg[er.u] -= 1;
            deg[er.v] -= 1;
            chosen.pop();
            total += count_hist_trees(g, e + 1, chosen, deg);
            total
        }
        let naive = count_hist_trees(&g, 0, &mut Vec::new(), &mut vec![0; g.n()]);
        let fast = snarklab::hist::enumerate_hists(&g, usize::MAX).unwrap().len();
        prop_assert_eq!(fast, naive);
    }
}
