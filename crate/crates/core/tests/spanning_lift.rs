use caykit::graph::{cayley_ball_graph, Multigraph};
use caykit::group::{Group, GroupSpec};
use caykit::spanning::{
    bfs_spanning_tree, enumerate_spanning_trees, free_subgroup_generators, lift_from_partition, orbit_partition,
    random_connected_partition, regular_spanning_tree, z_z3_no_regular_tree_check, SpanningTreeCert,
};
use proptest::prelude::*;

fn arb_connected() -> impl Strategy<Value = Multigraph> {
    (2usize..20).prop_flat_map(|n| {
        (prop::collection::vec(any::<prop::sample::Index>(), n - 1), prop::collection::vec((0..n, 0..n), 0..2 * n)).prop_map(
            move |(parents, extra)| {
                let mut pairs: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
                pairs.extend(extra.into_iter().filter(|e| e.0 != e.1));
                Multigraph::simple(n, pairs)
            },
        )
    })
}

fn assert_spanning(t: &SpanningTreeCert, host: &Multigraph) {
    let c = t.check();
    assert!(c.edge_count_ok && c.connected && c.acyclic, "{c:?}");
    assert!(t.inside(host));
}

proptest! {
    #[test]
    fn lifted_tree_is_spanning(g in arb_connected(), blocks in 1usize..8, seed in any::<u64>()) {
        let parts = random_connected_partition(&g, blocks, seed).unwrap();
        let t = lift_from_partition(&g, &parts).unwrap();
        let c = t.check();
        prop_assert_eq!(t.edges.len(), g.n() - 1);
        prop_assert!(c.edge_count_ok && c.connected && c.acyclic);
        prop_assert!(t.inside(&g));
        // Restricted to a block, the lift is the block's own spanning tree.
        for b in &parts.blocks {
            let inner = t.edges.iter().filter(|(u, v)| b.contains(u) && b.contains(v)).count();
            prop_assert_eq!(inner, b.len() - 1);
        }
    }

    #[test]
    fn bfs_tree_preserves_root_distances(g in arb_connected(), root in 0usize..64) {
        let root = root % g.n();
        let t = bfs_spanning_tree(&g, root).unwrap();
        prop_assert_eq!(t.as_graph().bfs(root), g.bfs(root));
    }

    #[test]
    fn enumeration_matches_matrix_tree_theorem(g in arb_connected()) {
        prop_assume!(g.n() <= 7);
        let (total, _) = enumerate_spanning_trees(&g, |_| true);
        prop_assert_eq!(total, kirchhoff(&g));
    }
}

/// Spanning-tree count via the determinant of a reduced Laplacian, in exact
/// rational arithmetic over i128.
#[allow(clippy::needless_range_loop)]
fn kirchhoff(g: &Multigraph) -> u64 {
    let n = g.n() - 1;
    let mut m = vec![vec![(0i128, 1i128); n]; n];
    for &(u, v, k) in g.edges() {
        let k = k as i128;
        for (a, b) in [(u, v), (v, u)] {
            if a > 0 {
                m[a - 1][a - 1].0 += k;
                if b > 0 {
                    m[a - 1][b - 1].0 -= k;
                }
            }
        }
    }
    let gcd = |mut a: i128, mut b: i128| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs().max(1)
    };
    let norm = |(p, q): (i128, i128)| {
        let d = gcd(p, q) * q.signum();
        (p / d, q / d)
    };
    let (mut num, mut den) = (1i128, 1i128);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c].0 != 0) else { return 0 };
        if piv != c {
            m.swap(piv, c);
            num = -num;
        }
        let (pp, pq) = m[c][c];
        (num, den) = norm((num * pp, den * pq));
        for r in c + 1..n {
            let (fp, fq) = norm((m[r][c].0 * pq, m[r][c].1 * pp));
            for k in c..n {
                let (ap, aq) = m[r][k];
                let (bp, bq) = m[c][k];
                m[r][k] = norm((ap * fq * bq - fp * bp * aq, aq * fq * bq));
            }
        }
    }
    (num / den) as u64
}

#[test]
fn regular_trees_on_free_windows() {
    for (spec, k, radius) in [(GroupSpec::free(2), 3, 5), (GroupSpec::free(2), 4, 4), (GroupSpec::free(3), 3, 4), (GroupSpec::free(3), 5, 3)] {
        let g = Group::new(&spec).unwrap();
        let s = g.generating_set().unwrap();
        let h = free_subgroup_generators(&g).unwrap();
        let w = cayley_ball_graph(&g, &s, radius, 1).unwrap();
        let parts = orbit_partition(&g, &w, &h).unwrap();
        let lift = lift_from_partition(&w.graph, &parts).unwrap();
        assert_spanning(&lift, &w.graph);
        let reg = regular_spanning_tree(&g, &s, &w, &lift, k, 1).unwrap();
        assert!(reg.ok(), "{spec:?} k={k}: {:?}", reg.irregular);
        assert!(reg.c <= 2);
        let deg = reg.tree.degrees();
        assert!(reg.interior.iter().all(|&v| deg[v] == k));
        // Tree edges are W-edges: their endpoints are within S-distance c.
        for &(u, v) in &reg.tree.edges {
            assert!(w.graph.bfs(u)[v] <= reg.c);
        }
    }
}

#[test]
fn zz3_window_has_no_regular_tree() {
    let g = Group::new(&GroupSpec::zz3()).unwrap();
    let w = cayley_ball_graph(&g, &g.generating_set().unwrap(), 2, 0).unwrap();
    let rep = z_z3_no_regular_tree_check(&g, &w).unwrap();
    assert!(rep.exhaustive);
    assert_eq!(rep.vertices, 15);
    assert_eq!(rep.spanning_trees, Some(27));
    assert_eq!(rep.interior_regular_trees, Some(0));
    assert!(rep.no_regular_tree());
}
