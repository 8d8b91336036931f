use caykit::graph::{double_edges, neighborhood, power_graph, Multigraph};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn arb_multigraph() -> impl Strategy<Value = Multigraph> {
    (2usize..12).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1usize..3), 0..3 * n)
            .prop_map(move |es| Multigraph::from_edges(n, es.into_iter().filter(|e| e.0 != e.1)))
    })
}

fn arb_connected() -> impl Strategy<Value = Multigraph> {
    (2usize..14).prop_flat_map(|n| {
        (prop::collection::vec(any::<prop::sample::Index>(), n - 1), prop::collection::vec((0..n, 0..n), 0..n)).prop_map(
            move |(parents, extra)| {
                let mut pairs: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
                pairs.extend(extra.into_iter().filter(|e| e.0 != e.1));
                Multigraph::simple(n, pairs)
            },
        )
    })
}

proptest! {
    #[test]
    fn handshake(g in arb_multigraph()) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn doubling_keeps_components(g in arb_multigraph()) {
        let d = double_edges(&g);
        prop_assert_eq!(d.edge_count(), 2 * g.edge_count());
        prop_assert_eq!(d.components(), g.components());
        prop_assert!((0..d.n()).all(|v| d.degree(v) % 2 == 0));
    }

    #[test]
    fn power_distances_sandwich(g in arb_connected(), k in 1usize..4) {
        let p = power_graph(&g, k);
        let d = g.all_pairs();
        let dp = p.all_pairs();
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert!(dp[u][v] <= d[u][v]);
                prop_assert!(k * dp[u][v] >= d[u][v]);
                prop_assert_eq!(dp[u][v], d[u][v].div_ceil(k));
            }
        }
    }

    #[test]
    fn neighborhood_matches_distances(g in arb_connected(), k in 0usize..3, seed in 0usize..100) {
        let a: BTreeSet<usize> = [seed % g.n()].into();
        let nb = neighborhood(&g, &a, k);
        let d = g.bfs(seed % g.n());
        let expected: BTreeSet<usize> = (0..g.n()).filter(|&v| d[v] <= k).collect();
        prop_assert_eq!(nb, expected);
    }

    #[test]
    fn json_round_trip(g in arb_multigraph()) {
        let back = Multigraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }
}
