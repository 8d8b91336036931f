//! Spanning trees of Cayley-graph windows: orbit quotients and lifts,
//! re-edging to a prescribed degree, and the triangle argument for ℤ*ℤ₃.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{CayleyWindow, Multigraph, UNREACHABLE};
use crate::group::{power_generating_set, Element, Family, GeneratingSet, Group};

/// A partition of a window's vertices into connected blocks, each with the
/// edges of `Φ` inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub block_of: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub block_edges: Vec<Vec<(usize, usize)>>,
}

impl OrbitPartition {
    /// Blocks from a labelling; `Φ` is the induced subgraph of each block.
    pub fn from_labels(g: &Multigraph, labels: &[usize]) -> Result<OrbitPartition> {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|&&(u, v, _)| u != v && labels[u] == labels[v])
            .map(|&(u, v, _)| (u, v))
            .collect();
        OrbitPartition::from_phi(g.n(), labels, &edges)
    }

    /// Blocks from a labelling and an explicit edge set `Φ`; every block must
    /// be connected through `Φ`.
    pub fn from_phi(n: usize, labels: &[usize], phi: &[(usize, usize)]) -> Result<OrbitPartition> {
        if labels.len() != n {
            return Err(Error::Precondition("partition does not cover the vertices".into()));
        }
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut block_of = vec![0; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let next = index.len();
            let b = *index.entry(labels[v]).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            block_of[v] = b;
            blocks[b].push(v);
        }
        let mut block_edges = vec![Vec::new(); blocks.len()];
        for &(u, v) in phi {
            if block_of[u] != block_of[v] {
                return Err(Error::Precondition(format!("Φ edge ({u},{v}) crosses blocks")));
            }
            block_edges[block_of[u]].push((u.min(v), u.max(v)));
        }
        for e in &mut block_edges {
            e.sort_unstable();
            e.dedup();
        }
        let part = OrbitPartition { block_of, blocks, block_edges };
        for b in 0..part.blocks.len() {
            if !part.block_graph(b).0.is_connected() {
                return Err(Error::Precondition(format!("block {b} is not connected")));
            }
        }
        Ok(part)
    }

    /// The block's `Φ` subgraph on local ids, with the local-to-global map.
    pub fn block_graph(&self, b: usize) -> (Multigraph, Vec<usize>) {
        let members = &self.blocks[b];
        let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let g = Multigraph::simple(members.len(), self.block_edges[b].iter().map(|&(u, v)| (local[&u], local[&v])));
        (g, members.clone())
    }
}

/// Generators of a rank-two free subgroup acting freely by right
/// multiplication, when the family has one.
pub fn free_subgroup_generators(group: &Group) -> Option<Vec<Element>> {
    let spec = group.spec();
    match &spec.family {
        Family::Free(m) if *m >= 2 => Some(group.standard_generators()[..2].to_vec()),
        Family::FreeProductZZ3 => {
            let [t, u] = [&group.standard_generators()[0], &group.standard_generators()[1]];
            let utu2 = group.multiply(&group.multiply(u, t), &group.inverse(u));
            Some(vec![t.clone(), utu2])
        }
        Family::DirectProduct(_) => {
            // first factor with a free subgroup, embedded via its letters
            let mut offset = 0;
            for f in factors(group) {
                if let Some(h) = free_subgroup_generators(&f) {
                    return Some(
                        h.iter()
                            .map(|x| {
                                let word: String = f.render(x).chars().map(|c| shift_letter(c, offset)).collect();
                                group.parse(&word).expect("embedded word parses")
                            })
                            .collect(),
                    );
                }
                offset += f.letters().len();
            }
            None
        }
        _ => None,
    }
}

fn factors(group: &Group) -> Vec<Group> {
    match &group.spec().family {
        Family::DirectProduct(fs) => fs.iter().map(|f| Group::new(f).expect("valid factor")).collect(),
        _ => Vec::new(),
    }
}

fn shift_letter(c: char, offset: usize) -> char {
    if c.is_whitespace() {
        return c;
    }
    let base = if c.is_ascii_uppercase() { b'A' } else { b'a' };
    let i = match c.to_ascii_lowercase() {
        't' => 0,
        'u' => 1,
        l => (l as u8 - b'a') as usize,
    };
    (base + (offset + i) as u8) as char
}

/// Partition of a Cayley window into the pieces of the orbits of `h` acting
/// by right multiplication: blocks are the components of `Φ = {(g, gh)}`.
pub fn orbit_partition(group: &Group, window: &CayleyWindow, h: &[Element]) -> Result<OrbitPartition> {
    let hs = GeneratingSet::new(group, h.to_vec());
    let mut phi = Vec::new();
    for (i, x) in window.ball.elements().iter().enumerate() {
        for s in hs.symmetric() {
            if let Some(j) = window.ball.index_of(&group.multiply(x, s)) {
                if i < j {
                    phi.push((i, j));
                }
            }
        }
    }
    let phi_graph = Multigraph::simple(window.graph.n(), phi.iter().copied());
    OrbitPartition::from_phi(window.graph.n(), &phi_graph.components(), &phi)
}

/// Random partition into connected blocks grown from `blocks` random seeds.
pub fn random_connected_partition(g: &Multigraph, blocks: usize, seed: u64) -> Result<OrbitPartition> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::NotConnected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = blocks.clamp(1, g.n());
    let mut label = vec![usize::MAX; g.n()];
    let mut frontier: Vec<usize> = Vec::new();
    let mut placed = 0;
    while placed < k {
        let v = rng.gen_range(0..g.n());
        if label[v] == usize::MAX {
            label[v] = placed;
            frontier.push(v);
            placed += 1;
        }
    }
    // Random-order growth keeps each block connected.
    let mut assigned = k;
    while assigned < g.n() {
        let i = rng.gen_range(0..frontier.len());
        let x = frontier[i];
        let free: Vec<usize> = g.neighbors(x).iter().copied().filter(|&y| label[y] == usize::MAX).collect();
        if free.is_empty() {
            frontier.swap_remove(i);
            continue;
        }
        let y = free[rng.gen_range(0..free.len())];
        label[y] = label[x];
        frontier.push(y);
        assigned += 1;
    }
    OrbitPartition::from_labels(g, &label)
}

/// One vertex per block; blocks adjacent when some edge of `g` crosses.
pub fn orbit_quotient(g: &Multigraph, parts: &OrbitPartition) -> Multigraph {
    let pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v, _)| (parts.block_of[u], parts.block_of[v]))
        .filter(|(a, b)| a != b)
        .collect();
    Multigraph::simple(parts.blocks.len(), pairs)
}

/// A spanning tree given by its edges (each `(u, v)` with `u < v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeCert {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub regular_degree: Option<usize>,
}

/// The three defining properties of a spanning tree, checked separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeCheck {
    pub edge_count_ok: bool,
    pub connected: bool,
    pub acyclic: bool,
}

impl TreeCheck {
    pub fn all(&self) -> bool {
        self.edge_count_ok && self.connected && self.acyclic
    }
}

impl SpanningTreeCert {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> SpanningTreeCert {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        SpanningTreeCert { n, edges, regular_degree: None }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn as_graph(&self) -> Multigraph {
        Multigraph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (u, v, 1)))
    }

    pub fn check(&self) -> TreeCheck {
        let edge_count_ok = self.edges.len() + 1 == self.n.max(1);
        let connected = self.as_graph().is_connected();
        let mut uf = UnionFind::new(self.n);
        let acyclic = self.edges.iter().all(|&(u, v)| uf.union(u, v));
        TreeCheck { edge_count_ok, connected, acyclic }
    }

    /// Every edge is an edge of `host`.
    pub fn inside(&self, host: &Multigraph) -> bool {
        self.edges.iter().all(|&(u, v)| host.multiplicity(u, v) > 0)
    }

    pub fn to_json(&self, labels: Option<&[String]>) -> Value {
        let name = |v: usize| match labels {
            Some(l) => json!(l[v]),
            None => json!(v),
        };
        json!({
            "vertices": self.n,
            "edges": self.edges.iter().map(|&(u, v)| json!([name(u), name(v)])).collect::<Vec<_>>(),
            "regular_degree": self.regular_degree,
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Breadth-first spanning tree; each vertex hangs from its smallest
/// neighbour one step closer to the root.
pub fn bfs_spanning_tree(g: &Multigraph, root: usize) -> Result<SpanningTreeCert> {
    let dist = g.bfs(root);
    if dist.contains(&UNREACHABLE) {
        return Err(Error::NotConnected);
    }
    let edges = (0..g.n())
        .filter(|&v| v != root)
        .map(|v| {
            let p = *g.neighbors(v).iter().find(|&&w| dist[w] + 1 == dist[v]).expect("bfs parent");
            (v, p)
        })
        .collect();
    Ok(SpanningTreeCert::new(g.n(), edges))
}

/// A spanning tree per block, built breadth-first from the block's smallest
/// vertex, in global ids.
pub fn block_bfs_trees(parts: &OrbitPartition) -> Result<Vec<Vec<(usize, usize)>>> {
    (0..parts.blocks.len())
        .map(|b| {
            let (g, global) = parts.block_graph(b);
            let t = bfs_spanning_tree(&g, 0)?;
            Ok(t.edges.iter().map(|&(u, v)| (global[u].min(global[v]), global[u].max(global[v]))).collect())
        })
        .collect()
}

/// Union of the block trees and, for every quotient-tree edge, the
/// lexicographically smallest edge of `g` joining the two blocks.
pub fn lift_spanning_tree(
    g: &Multigraph,
    parts: &OrbitPartition,
    block_trees: &[Vec<(usize, usize)>],
    quotient_tree: &SpanningTreeCert,
) -> Result<SpanningTreeCert> {
    let mut witness: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for &(u, v, _) in g.edges() {
        let (a, b) = (parts.block_of[u], parts.block_of[v]);
        if a != b {
            let key = (a.min(b), a.max(b));
            witness.entry(key).or_insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<(usize, usize)> = block_trees.iter().flatten().copied().collect();
    for &(a, b) in &quotient_tree.edges {
        let w = witness
            .get(&(a, b))
            .ok_or_else(|| Error::Internal(format!("quotient edge ({a},{b}) has no witness")))?;
        edges.push(*w);
    }
    Ok(SpanningTreeCert::new(g.n(), edges))
}

/// Block trees, quotient tree and lift in one go.
pub fn lift_from_partition(g: &Multigraph, parts: &OrbitPartition) -> Result<SpanningTreeCert> {
    let block_trees = block_bfs_trees(parts)?;
    let quotient = orbit_quotient(g, parts);
    let qt = bfs_spanning_tree(&quotient, 0)?;
    lift_spanning_tree(g, parts, &block_trees, &qt)
}

/// A degree-`k` spanning tree of a window of `Cay(G; W)`.
#[derive(Debug, Clone)]
pub struct RegularTree {
    pub k: usize,
    /// Largest `S`-distance spanned by a tree edge.
    pub c: usize,
    pub w: GeneratingSet,
    pub tree: SpanningTreeCert,
    pub interior: Vec<usize>,
    /// Interior vertices whose tree degree is not `k`.
    pub irregular: Vec<usize>,
}

impl RegularTree {
    pub fn ok(&self) -> bool {
        self.irregular.is_empty() && self.tree.check().all()
    }
}

/// Re-edges a spanning tree `phi` of a Cayley window into a tree whose
/// interior vertices all have degree `k`. Rooted at vertex 0, each vertex
/// keeps some of its children and hands the rest to earlier siblings, so new
/// edges span at most two edges of `phi`.
pub fn regular_spanning_tree(
    group: &Group,
    s: &GeneratingSet,
    window: &CayleyWindow,
    phi: &SpanningTreeCert,
    k: usize,
    margin: usize,
) -> Result<RegularTree> {
    if k < 3 {
        return Err(Error::Precondition(format!("degree {k} < 3")));
    }
    if !phi.check().all() || phi.n != window.graph.n() {
        return Err(Error::Precondition("input is not a spanning tree of the window".into()));
    }
    let host = phi.as_graph();
    let dist = host.bfs(0);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); phi.n];
    let mut order: Vec<usize> = (0..phi.n).collect();
    order.sort_by_key(|&v| (dist[v], v));
    for &v in &order[1..] {
        let p = *host.neighbors(v).iter().find(|&&w| dist[w] + 1 == dist[v]).expect("parent");
        children[p].push(v);
    }
    let a = k - 1;
    let mut own = vec![a; phi.n];
    own[0] = k;
    let mut edges = Vec::with_capacity(phi.n.saturating_sub(1));
    for &u in &order {
        let kids = &children[u];
        let keep = own[u].min(kids.len());
        for &c in &kids[..keep] {
            edges.push((u, c));
        }
        // Remaining children go to earlier siblings, up to a - 1 each.
        let mut adopter = 0;
        let mut used = 0;
        for &c in &kids[keep..] {
            while used == a - 1 {
                adopter += 1;
                used = 0;
            }
            let sib = kids[adopter];
            edges.push((sib, c));
            used += 1;
            own[sib] -= 1;
        }
    }
    let tree = SpanningTreeCert::new(phi.n, edges);
    let c = tree.edges.iter().map(|&(u, v)| dist_in_window(window, u, v)).max().unwrap_or(1).max(1);
    let w = power_generating_set(group, s, c)?;
    let interior_radius = window.ball.radius.saturating_sub(margin);
    let interior: Vec<usize> = (0..phi.n).filter(|&v| window.ball.distance_at(v) <= interior_radius).collect();
    let deg = tree.degrees();
    let irregular: Vec<usize> = interior.iter().copied().filter(|&v| deg[v] != k).collect();
    let mut tree = tree;
    if irregular.is_empty() {
        tree.regular_degree = Some(k);
    }
    Ok(RegularTree { k, c, w, tree, interior, irregular })
}

fn dist_in_window(window: &CayleyWindow, u: usize, v: usize) -> usize {
    // Tree edges join vertices a couple of steps apart; a local search suffices.
    let g = &window.graph;
    let mut seen = BTreeMap::from([(u, 0usize)]);
    let mut q = VecDeque::from([u]);
    while let Some(x) = q.pop_front() {
        if x == v {
            return seen[&x];
        }
        for &y in g.neighbors(x) {
            if !seen.contains_key(&y) {
                seen.insert(y, seen[&x] + 1);
                q.push_back(y);
            }
        }
    }
    UNREACHABLE
}

/// Findings of [`z_z3_no_regular_tree_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zz3Report {
    pub radius: usize,
    pub vertices: usize,
    /// Contracting the `u`-components leaves a tree, so every `t`-edge is a bridge.
    pub t_edges_are_bridges: bool,
    pub interior_triangles: usize,
    /// Triangles whose corners fall into three components once the triangle's
    /// own edges are removed.
    pub two_of_three_triangles: usize,
    /// Tree-degree patterns forced on interior triangles, sorted descending.
    pub degree_patterns: BTreeSet<Vec<usize>>,
    pub exhaustive: bool,
    pub spanning_trees: Option<u64>,
    pub interior_regular_trees: Option<u64>,
}

impl Zz3Report {
    pub fn no_regular_tree(&self) -> bool {
        let structural = self.t_edges_are_bridges
            && self.interior_triangles > 0
            && self.two_of_three_triangles == self.interior_triangles
            && self.degree_patterns.iter().all(|p| p.windows(2).any(|w| w[0] != w[1]));
        structural && self.interior_regular_trees.is_none_or(|c| c == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "radius": self.radius,
            "vertices": self.vertices,
            "t_edges_are_bridges": self.t_edges_are_bridges,
            "interior_triangles": self.interior_triangles,
            "two_of_three_triangles": self.two_of_three_triangles,
            "degree_patterns": self.degree_patterns.iter().collect::<Vec<_>>(),
            "exhaustive": self.exhaustive,
            "spanning_trees": self.spanning_trees,
            "interior_regular_trees": self.interior_regular_trees,
            "no_regular_tree": self.no_regular_tree(),
        })
    }
}

/// Local obstruction to regular spanning trees in `Cay(ℤ*ℤ₃; {t, u})`,
/// checked on a window of radius at least 2 with interior margin 1, plus
/// exhaustive enumeration when the window has at most 20 vertices.
pub fn z_z3_no_regular_tree_check(group: &Group, window: &CayleyWindow) -> Result<Zz3Report> {
    if group.spec().family != Family::FreeProductZZ3 {
        return Err(Error::Precondition("expects the free product of Z and Z3".into()));
    }
    if window.ball.radius < 2 {
        return Err(Error::Precondition("window too small: radius must be at least 2".into()));
    }
    let g = &window.graph;
    let n = g.n();
    let elems = window.ball.elements();
    let (t, u) = (&group.standard_generators()[0], &group.standard_generators()[1]);
    let step = |i: usize, s: &Element| window.ball.index_of(&group.multiply(&elems[i], s));
    let mut u_edges = Vec::new();
    let mut t_edges = Vec::new();
    for i in 0..n {
        if let Some(j) = step(i, u) {
            u_edges.push((i, j));
        }
        if let Some(j) = step(i, t) {
            t_edges.push((i, j));
        }
    }
    let u_comp = Multigraph::simple(n, u_edges.iter().copied()).components();
    let ncomp = u_comp.iter().max().map_or(0, |m| m + 1);
    let mut uf = UnionFind::new(ncomp);
    let t_edges_are_bridges = t_edges.iter().all(|&(a, b)| uf.union(u_comp[a], u_comp[b]))
        && t_edges.len() + 1 == ncomp;

    let interior = |i: usize| window.ball.distance_at(i) < window.ball.radius;
    let mut interior_triangles = 0;
    let mut two_of_three = 0;
    let mut patterns = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        let Some(j) = step(i, u) else { continue };
        let Some(k) = step(j, u) else { continue };
        let tri = [i, j, k];
        let mut key = tri;
        key.sort_unstable();
        if !tri.iter().all(|&x| interior(x)) || !seen.insert(key) {
            continue;
        }
        interior_triangles += 1;
        let removed: BTreeSet<(usize, usize)> =
            [(i, j), (j, k), (k, i)].iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let comp = g.without_edges(&removed).components();
        if comp[i] != comp[j] && comp[j] != comp[k] && comp[i] != comp[k] {
            two_of_three += 1;
        }
        let tdeg = |x: usize| t_edges.iter().filter(|&&(a, b)| a == x || b == x).count();
        for omit in 0..3 {
            // the corner opposite the omitted edge keeps both triangle edges
            let opposite = (omit + 2) % 3;
            let mut d: Vec<usize> = (0..3).map(|p| tdeg(tri[p]) + if p == opposite { 2 } else { 1 }).collect();
            d.sort_unstable_by(|a, b| b.cmp(a));
            patterns.insert(d);
        }
    }
    let exhaustive = n <= 20;
    let (spanning_trees, interior_regular_trees) = if exhaustive {
        let interior_set: Vec<usize> = (0..n).filter(|&i| interior(i)).collect();
        let (total, regular) = enumerate_spanning_trees(g, |deg| {
            let first = deg[interior_set[0]];
            interior_set.iter().all(|&v| deg[v] == first)
        });
        (Some(total), Some(regular))
    } else {
        (None, None)
    };
    Ok(Zz3Report {
        radius: window.ball.radius,
        vertices: n,
        t_edges_are_bridges,
        interior_triangles,
        two_of_three_triangles: two_of_three,
        degree_patterns: patterns,
        exhaustive,
        spanning_trees,
        interior_regular_trees,
    })
}

/// Counts spanning trees of a small simple graph, and those whose degree
/// vector satisfies `pred`.
pub fn enumerate_spanning_trees<F: Fn(&[usize]) -> bool>(g: &Multigraph, pred: F) -> (u64, u64) {
    let edges: Vec<(usize, usize)> = g.edges().iter().filter(|e| e.0 != e.1).map(|e| (e.0, e.1)).collect();
    let n = g.n();
    let mut chosen = Vec::new();
    let mut counts = (0u64, 0u64);
    fn rec<F: Fn(&[usize]) -> bool>(
        edges: &[(usize, usize)],
        i: usize,
        n: usize,
        chosen: &mut Vec<(usize, usize)>,
        pred: &F,
        counts: &mut (u64, u64),
    ) {
        if chosen.len() + 1 == n {
            let mut uf = UnionFind::new(n);
            if chosen.iter().all(|&(u, v)| uf.union(u, v)) {
                counts.0 += 1;
                let mut deg = vec![0; n];
                for &(u, v) in chosen.iter() {
                    deg[u] += 1;
                    deg[v] += 1;
                }
                if pred(&deg) {
                    counts.1 += 1;
                }
            }
            return;
        }
        if edges.len() - i < n - 1 - chosen.len() {
            return;
        }
        let mut uf = UnionFind::new(n);
        for &(u, v) in chosen.iter() {
            uf.union(u, v);
        }
        let (a, b) = edges[i];
        if uf.find(a) != uf.find(b) {
            chosen.push(edges[i]);
            rec(edges, i + 1, n, chosen, pred, counts);
            chosen.pop();
        }
        rec(edges, i + 1, n, chosen, pred, counts);
    }
    if n <= 1 {
        return (1, u64::from(pred(&vec![0; n])));
    }
    rec(&edges, 0, n, &mut chosen, &pred, &mut counts);
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cayley_ball_graph, named};
    use crate::group::GroupSpec;

    fn window(spec: GroupSpec, r: usize) -> (Group, GeneratingSet, CayleyWindow) {
        let g = Group::new(&spec).unwrap();
        let s = g.generating_set().unwrap();
        let w = cayley_ball_graph(&g, &s, r, 1).unwrap();
        (g, s, w)
    }

    #[test]
    fn singleton_quotient_is_the_graph() {
        let g = named::cycle(5);
        let parts = OrbitPartition::from_labels(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(orbit_quotient(&g, &parts), Multigraph::simple(5, g.edges().iter().map(|e| (e.0, e.1))));
    }

    #[test]
    fn grid_rows_quotient_to_an_edge() {
        let g = named::grid(4, 2);
        let parts = OrbitPartition::from_labels(&g, &[0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
        let q = orbit_quotient(&g, &parts);
        assert_eq!(q.n(), 2);
        assert_eq!(q.edges(), &[(0, 1, 1)]);
    }

    #[test]
    fn disconnected_block_rejected() {
        let g = named::path(3);
        assert!(OrbitPartition::from_labels(&g, &[0, 1, 0]).is_err());
    }

    #[test]
    fn bfs_trees() {
        let t = bfs_spanning_tree(&named::cycle(4), 0).unwrap();
        assert_eq!(t.edges, vec![(0, 1), (0, 3), (1, 2)]);
        let k = bfs_spanning_tree(&named::complete(5), 0).unwrap();
        assert_eq!(k.edges, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        let two = Multigraph::simple(4, [(0, 1), (2, 3)]);
        assert!(matches!(bfs_spanning_tree(&two, 0), Err(Error::NotConnected)));
    }

    #[test]
    fn grid_rows_lift() {
        let g = named::grid(4, 4);
        let labels: Vec<usize> = (0..16).map(|v| v / 4).collect();
        let parts = OrbitPartition::from_labels(&g, &labels).unwrap();
        let t = lift_from_partition(&g, &parts).unwrap();
        assert_eq!(t.edges.len(), 15);
        assert!(t.check().all());
        assert!(t.inside(&g));
        // rows joined through column 0
        assert!(t.edges.contains(&(0, 4)) && t.edges.contains(&(4, 8)) && t.edges.contains(&(8, 12)));
    }

    #[test]
    fn random_partitions_lift_to_trees() {
        let g = named::grid(6, 5);
        for seed in 0..20 {
            let parts = random_connected_partition(&g, 1 + seed as usize % 7, seed).unwrap();
            let t = lift_from_partition(&g, &parts).unwrap();
            assert!(t.check().all() && t.inside(&g), "seed {seed}");
        }
    }

    #[test]
    fn free_group_tree_is_its_own_regular_tree() {
        let (g, s, w) = window(GroupSpec::free(2), 4);
        let h = free_subgroup_generators(&g).unwrap();
        let parts = orbit_partition(&g, &w, &h).unwrap();
        assert_eq!(parts.blocks.len(), 1);
        let phi = lift_from_partition(&w.graph, &parts).unwrap();
        let r = regular_spanning_tree(&g, &s, &w, &phi, 4, 1).unwrap();
        assert!(r.ok());
        assert_eq!(r.c, 1);
        assert_eq!(r.tree, {
            let mut p = phi.clone();
            p.regular_degree = Some(4);
            p
        });
    }

    #[test]
    fn free_groups_reedge_to_degree_three() {
        for m in [2, 3] {
            let (g, s, w) = window(GroupSpec::free(m), 4);
            let h = free_subgroup_generators(&g).unwrap();
            let parts = orbit_partition(&g, &w, &h).unwrap();
            let phi = lift_from_partition(&w.graph, &parts).unwrap();
            let r = regular_spanning_tree(&g, &s, &w, &phi, 3, 1).unwrap();
            assert!(r.ok(), "F{m}: {:?}", r.irregular);
            assert_eq!(r.c, 2);
        }
    }

    #[test]
    fn zz3_radius_two_has_no_regular_tree() {
        let (g, _, w) = window(GroupSpec::zz3(), 2);
        assert_eq!(w.graph.n(), 15);
        let rep = z_z3_no_regular_tree_check(&g, &w).unwrap();
        assert!(rep.t_edges_are_bridges);
        assert_eq!(rep.spanning_trees, Some(27));
        assert_eq!(rep.interior_regular_trees, Some(0));
        assert_eq!(rep.degree_patterns, BTreeSet::from([vec![4, 3, 3]]));
        assert!(rep.no_regular_tree());
        let (g1, _, w1) = window(GroupSpec::zz3(), 1);
        assert!(z_z3_no_regular_tree_check(&g1, &w1).is_err());
    }

    #[test]
    fn spanning_tree_count_of_k4() {
        assert_eq!(enumerate_spanning_trees(&named::complete(4), |_| true), (16, 16));
    }

    #[test]
    fn zz3_free_subgroup_blocks_are_trees() {
        let (g, _, w) = window(GroupSpec::zz3(), 5);
        let h = free_subgroup_generators(&g).unwrap();
        let parts = orbit_partition(&g, &w, &h).unwrap();
        assert!(parts.blocks.len() > 1);
        for b in 0..parts.blocks.len() {
            assert_eq!(parts.block_edges[b].len() + 1, parts.blocks[b].len());
        }
    }
}
