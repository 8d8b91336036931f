use caykit::graph::{cayley_ball_graph, double_edges, Multigraph};
use caykit::group::{Group, GroupSpec};
use caykit::hamilton::{
    check_hall_condition, double_cover_walk, eulerian_circuit, hall_select, hamiltonian_in_power, path_of_action,
    verify_translation_like, PathAction,
};
use proptest::prelude::*;

fn arb_connected() -> impl Strategy<Value = Multigraph> {
    (1usize..16).prop_flat_map(|n| {
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
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn euler_circuit_uses_each_edge_exactly(g in arb_connected()) {
        prop_assume!(g.edge_count() > 0);
        let d = double_edges(&g);
        let c = eulerian_circuit(&d).unwrap();
        prop_assert_eq!(c.vertices.first(), c.vertices.last());
        let counts = c.traversal_counts();
        prop_assert_eq!(counts.len(), g.edges().len());
        for &(u, v, m) in d.edges() {
            prop_assert_eq!(counts[&(u, v)], m);
        }
    }

    #[test]
    fn double_cover_walk_twice_per_edge(g in arb_connected()) {
        let w = double_cover_walk(&g).unwrap();
        for &(u, v, _) in g.edges() {
            prop_assert_eq!(w.traversal_counts()[&(u, v)], 2);
        }
        let seen: std::collections::BTreeSet<usize> = w.vertices.iter().copied().collect();
        prop_assert_eq!(seen.len(), g.n());
    }

    #[test]
    fn hall_selection_properties(g in arb_connected()) {
        let walk = double_cover_walk(&g).unwrap();
        let d = g.max_degree();
        let sel = hall_select(&walk, d, g.n()).unwrap();
        prop_assert_eq!(sel.m, d + 1);
        let picked: Vec<usize> = sel.s.iter().map(|&i| walk.vertices[i]).collect();
        let distinct: std::collections::BTreeSet<usize> = picked.iter().copied().collect();
        prop_assert_eq!(distinct.len(), picked.len());
        prop_assert_eq!(distinct.len(), g.n());
        let full_blocks = walk.vertices.len() / sel.m;
        for (k, &off) in sel.phi.iter().enumerate().take(full_blocks) {
            prop_assert!(sel.s.contains(&(k * sel.m + off)));
        }
        if g.n() > 1 {
            let check = check_hall_condition(&walk.vertices, sel.m, 12, 64, 7);
            prop_assert!(check.violations.is_empty());
            prop_assert!(check.edge_bound_violations.is_empty());
        }
    }

    #[test]
    fn hamiltonian_steps_bounded(g in arb_connected()) {
        let h = hamiltonian_in_power(&g).unwrap();
        let mut sorted = h.order.vertices.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
        prop_assert_eq!(h.power_k, 2 * h.d + 1);
        let dist = g.all_pairs();
        for p in h.order.vertices.windows(2) {
            prop_assert!(dist[p[0]][p[1]] <= h.power_k);
        }
    }

    #[test]
    fn path_action_round_trip(g in arb_connected(), base in 0usize..64) {
        let h = hamiltonian_in_power(&g).unwrap();
        let act = PathAction::new(&h.order, g.n()).unwrap();
        let table = act.to_table();
        table.validate().unwrap();
        let start = h.order.vertices[base % g.n()];
        let back = path_of_action(&table, start);
        prop_assert_eq!(&back.vertices, &h.order.vertices);
        for (i, &v) in h.order.vertices.iter().enumerate() {
            prop_assert_eq!(act.act(h.order.vertices[0], i as i64).unwrap(), v);
        }
    }
}

#[test]
fn cayley_windows_admit_bounded_orders() {
    for (spec, r) in [(GroupSpec::free_abelian(2), 6), (GroupSpec::free(2), 5), (GroupSpec::zz3(), 5)] {
        let g = Group::new(&spec).unwrap();
        let w = cayley_ball_graph(&g, &g.generating_set().unwrap(), r, 1).unwrap();
        let h = hamiltonian_in_power(&w.graph).unwrap();
        let table = PathAction::new(&h.order, w.graph.n()).unwrap().to_table();
        let rep = verify_translation_like(&table, &w.graph, 3).unwrap();
        assert!(rep.is_free(), "{spec:?}");
        assert!(rep.lipschitz_c <= h.power_k, "{spec:?}");
    }
}

#[test]
fn disconnected_graph_is_refused() {
    let g = Multigraph::simple(4, [(0, 1), (2, 3)]);
    assert!(hamiltonian_in_power(&g).is_err());
}
