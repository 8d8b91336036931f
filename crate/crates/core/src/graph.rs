//! Finite multigraphs, Cayley-graph windows, doubling, powers and
//! neighbourhoods.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{enumerate_ball, Ball, GeneratingSet, Group};

/// Marker for unreachable vertices in distance vectors.
pub const UNREACHABLE: usize = usize::MAX;

/// A finite multigraph on vertices `0..n`. Edges are kept as a sorted list of
/// `(u, v, multiplicity)` with `u <= v`; a loop contributes 2 to its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
    interior: Vec<bool>,
    labels: Option<Vec<String>>,
    adj: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Multigraph {
    /// Builds a multigraph; repeated pairs accumulate multiplicity.
    pub fn from_edges<I>(n: usize, edges: I) -> Multigraph
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut acc: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (u, v, m) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) outside 0..{n}");
            if m > 0 {
                *acc.entry((u.min(v), u.max(v))).or_default() += m;
            }
        }
        let edges: Vec<_> = acc.into_iter().map(|((u, v), m)| (u, v, m)).collect();
        let mut adj = vec![Vec::new(); n];
        let mut degree = vec![0; n];
        for &(u, v, m) in &edges {
            degree[u] += m;
            degree[v] += m;
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Multigraph { n, edges, interior: vec![true; n], labels: None, adj, degree }
    }

    /// Simple graph from unordered pairs.
    pub fn simple<I>(n: usize, pairs: I) -> Multigraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: BTreeSet<(usize, usize)> = pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Multigraph::from_edges(n, set.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn with_interior(mut self, interior: Vec<bool>) -> Multigraph {
        assert_eq!(interior.len(), self.n);
        self.interior = interior;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Multigraph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .map(|i| self.edges[i].2)
            .unwrap_or(0)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Distinct neighbours other than `v` itself, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    pub fn interior(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.interior[v]).collect()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Breadth-first distances from `src` ([`UNREACHABLE`] when unreachable).
    pub fn bfs(&self, src: usize) -> Vec<usize> {
        self.multi_source_bfs(std::slice::from_ref(&src))
    }

    pub fn multi_source_bfs(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s] == UNREACHABLE {
                dist[s] = 0;
                q.push_back(s);
            }
        }
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == UNREACHABLE {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    /// All-pairs distances by repeated BFS.
    pub fn all_pairs(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.bfs(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected components as a label per vertex, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![UNREACHABLE; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != UNREACHABLE {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if comp[y] == UNREACHABLE {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// The subgraph with the given edges removed (all copies of each pair).
    pub fn without_edges(&self, removed: &BTreeSet<(usize, usize)>) -> Multigraph {
        let kept = self.edges.iter().copied().filter(|&(u, v, _)| !removed.contains(&(u, v)));
        let mut g = Multigraph::from_edges(self.n, kept);
        g.interior = self.interior.clone();
        g.labels = self.labels.clone();
        g
    }

    /// Graphviz rendering; parallel edges appear as repeated lines.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.n {
            let shape = if self.interior[v] { "circle" } else { "box" };
            let _ = writeln!(s, "  {v} [label=\"{}\", shape={shape}];", self.label(v));
        }
        for &(u, v, m) in &self.edges {
            for _ in 0..m {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
        s.push_str("}\n");
        s
    }

    /// `{vertices, edges: [[u, v, mult]], interior}` with edges by index.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = match &self.labels {
            Some(l) => l.iter().map(|x| json!(x)).collect(),
            None => (0..self.n).map(|v| json!(v)).collect(),
        };
        json!({
            "vertices": vertices,
            "edges": self.edges.iter().map(|&(u, v, m)| json!([u, v, m])).collect::<Vec<_>>(),
            "interior": self.interior(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Multigraph> {
        let bad = |m: &str| Error::Parse(format!("graph json: {m}"));
        let verts = v.get("vertices").ok_or_else(|| bad("missing vertices"))?;
        let (n, labels) = match verts {
            Value::Number(k) => (k.as_u64().ok_or_else(|| bad("vertex count"))? as usize, None),
            Value::Array(a) => {
                let labels: Vec<String> = a
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                (a.len(), Some(labels))
            }
            _ => return Err(bad("vertices must be a count or an array")),
        };
        let mut edges = Vec::new();
        for e in v.get("edges").and_then(Value::as_array).ok_or_else(|| bad("missing edges"))? {
            let e = e.as_array().ok_or_else(|| bad("edge must be an array"))?;
            let num = |i: usize| e.get(i).and_then(Value::as_u64).map(|x| x as usize);
            let (u, w) = (num(0).ok_or_else(|| bad("edge endpoint"))?, num(1).ok_or_else(|| bad("edge endpoint"))?);
            if u >= n || w >= n {
                return Err(bad("edge endpoint out of range"));
            }
            edges.push((u, w, num(2).unwrap_or(1)));
        }
        let mut g = Multigraph::from_edges(n, edges);
        if let Some(l) = labels {
            g = g.with_labels(l);
        }
        if let Some(int) = v.get("interior").and_then(Value::as_array) {
            let mut mask = vec![false; n];
            for x in int {
                let i = x.as_u64().ok_or_else(|| bad("interior entries must be indices"))? as usize;
                if i >= n {
                    return Err(bad("interior index out of range"));
                }
                mask[i] = true;
            }
            g = g.with_interior(mask);
        }
        Ok(g)
    }
}

/// Kind flag carried by a [`PathSeq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Walk,
    Eulerian,
    Hamiltonian,
}

/// A finite walk recorded as its sequence of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSeq {
    pub vertices: Vec<usize>,
    pub kind: PathKind,
}

impl PathSeq {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of traversals of each unordered pair by consecutive entries.
    pub fn traversal_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut c = BTreeMap::new();
        for w in self.vertices.windows(2) {
            *c.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default() += 1;
        }
        c
    }
}

/// A Cayley-graph ball together with the group data needed to read it.
#[derive(Debug, Clone)]
pub struct CayleyWindow {
    pub ball: Ball,
    pub graph: Multigraph,
}

/// The ball of the given radius as a graph, with interior the ball of radius
/// `radius - k`. Vertex `i` is the `i`-th element of the ball.
pub fn cayley_ball_graph(group: &Group, s: &GeneratingSet, radius: usize, k: usize) -> Result<CayleyWindow> {
    if k > radius {
        return Err(Error::Precondition(format!("margin {k} exceeds radius {radius}")));
    }
    let ball = enumerate_ball(group, s, radius)?.with_margin(k);
    let mut pairs = Vec::new();
    for (i, x) in ball.elements().iter().enumerate() {
        for g in s.symmetric() {
            if let Some(j) = ball.index_of(&group.multiply(x, g)) {
                if i < j {
                    pairs.push((i, j));
                }
            }
        }
    }
    let interior = (0..ball.len()).map(|i| ball.is_interior(i)).collect();
    let labels = ball.elements().iter().map(|e| group.render(e)).collect();
    let graph = Multigraph::simple(ball.len(), pairs).with_interior(interior).with_labels(labels);
    Ok(CayleyWindow { ball, graph })
}

/// Every edge multiplicity doubled.
pub fn double_edges(g: &Multigraph) -> Multigraph {
    let mut d = Multigraph::from_edges(g.n, g.edges.iter().map(|&(u, v, m)| (u, v, 2 * m)));
    d.interior = g.interior.clone();
    d.labels = g.labels.clone();
    d
}

/// The simple graph joining vertices at distance `1..=k` in `g`.
pub fn power_graph(g: &Multigraph, k: usize) -> Multigraph {
    assert!(k >= 1, "power must be >= 1");
    let mut pairs = Vec::new();
    for u in 0..g.n {
        let d = bounded_bfs(g, u, k);
        for (v, &dv) in d.iter().enumerate() {
            if v > u && dv != UNREACHABLE && dv >= 1 {
                pairs.push((u, v));
            }
        }
    }
    let mut p = Multigraph::simple(g.n, pairs);
    p.interior = g.interior.clone();
    p.labels = g.labels.clone();
    p
}

fn bounded_bfs(g: &Multigraph, src: usize, k: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        if dist[x] == k {
            continue;
        }
        for &y in &g.adj[x] {
            if dist[y] == UNREACHABLE {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

/// `A` together with every vertex within distance `k` of `A`.
pub fn neighborhood(g: &Multigraph, a: &BTreeSet<usize>, k: usize) -> BTreeSet<usize> {
    let src: Vec<usize> = a.iter().copied().collect();
    g.multi_source_bfs(&src)
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d <= k)
        .map(|(v, _)| v)
        .collect()
}

/// Small named graphs used by tests, examples and the CLI.
pub mod named {
    use super::Multigraph;

    pub fn path(n: usize) -> Multigraph {
        Multigraph::simple(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Multigraph {
        Multigraph::simple(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Multigraph {
        Multigraph::simple(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn star(leaves: usize) -> Multigraph {
        Multigraph::simple(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    /// `w × h` grid; vertex `(x, y)` has id `y * w + x`.
    pub fn grid(w: usize, h: usize) -> Multigraph {
        let mut pairs = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    pairs.push((v, v + 1));
                }
                if y + 1 < h {
                    pairs.push((v, v + w));
                }
            }
        }
        Multigraph::simple(w * h, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::group::GroupSpec;

    fn floyd(g: &Multigraph) -> Vec<Vec<usize>> {
        let n = g.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for &(u, v, _) in g.edges() {
            if u != v {
                d[u][v] = 1;
                d[v][u] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    #[test]
    fn z_window_is_a_path() {
        let g = Group::new(&GroupSpec::free_abelian(1)).unwrap();
        let s = g.generating_set().unwrap();
        let w = cayley_ball_graph(&g, &s, 3, 0).unwrap();
        assert_eq!(w.graph.n(), 7);
        assert_eq!(w.graph.edge_count(), 6);
        let leaves = (0..7).filter(|&v| w.graph.degree(v) == 1).count();
        assert_eq!(leaves, 2);
        assert!(w.graph.is_connected());
    }

    #[test]
    fn z2_window_radius_two() {
        let g = Group::new(&GroupSpec::free_abelian(2)).unwrap();
        let s = g.generating_set().unwrap();
        let w = cayley_ball_graph(&g, &s, 2, 1).unwrap();
        assert_eq!(w.graph.n(), 13);
        assert_eq!(w.graph.degree(0), 4);
        assert_eq!(w.graph.interior().len(), 5);
    }

    #[test]
    fn zz3_window_is_a_tree_of_triangles() {
        let g = Group::new(&GroupSpec::zz3()).unwrap();
        let s = g.generating_set().unwrap();
        let w = cayley_ball_graph(&g, &s, 4, 0).unwrap();
        let u = g.parse("u").unwrap();
        // every u-orbit inside the window is a triangle
        for (i, x) in w.ball.elements().iter().enumerate() {
            let j = w.ball.index_of(&g.multiply(x, &u));
            let k = j.and_then(|j| w.ball.index_of(&g.multiply(&w.ball.elements()[j], &u)));
            if let (Some(j), Some(k)) = (j, k) {
                assert_eq!(w.graph.multiplicity(i, j), 1);
                assert_eq!(w.graph.multiplicity(j, k), 1);
                assert_eq!(w.graph.multiplicity(k, i), 1);
            }
        }
        // cycle rank equals the number of full triangles: each triangle contributes one cycle
        let g2 = &w.graph;
        let triangles = (0..g2.n())
            .filter(|&i| {
                let x = &w.ball.elements()[i];
                let j = w.ball.index_of(&g.multiply(x, &u));
                let k = w.ball.index_of(&g.multiply(&g.multiply(x, &u), &u));
                j.is_some() && k.is_some()
            })
            .count()
            / 3;
        assert_eq!(g2.edge_count() + 1 - g2.n(), triangles);
    }

    #[test]
    fn doubling() {
        let e = path(2);
        let d = double_edges(&e);
        assert_eq!(d.multiplicity(0, 1), 2);
        assert_eq!((d.degree(0), d.degree(1)), (2, 2));
        let t = double_edges(&cycle(3));
        assert!((0..3).all(|v| t.degree(v) == 4));
    }

    #[test]
    fn powers_match_floyd_warshall() {
        let p4 = path(4);
        let sq = power_graph(&p4, 2);
        let d = floyd(&p4);
        for (u, row) in d.iter().enumerate() {
            for (v, &duv) in row.iter().enumerate() {
                let want = u != v && duv <= 2;
                assert_eq!(sq.multiplicity(u, v) == 1, want);
            }
        }
        assert_eq!(sq.edge_count(), 5);
        assert_eq!(power_graph(&cycle(6), 3), complete(6));
        assert_eq!(power_graph(&cycle(6), 1), cycle(6));
    }

    #[test]
    fn neighborhoods() {
        let g = grid(5, 5);
        let a = BTreeSet::from([12]);
        assert_eq!(neighborhood(&g, &a, 0), a);
        assert_eq!(neighborhood(&g, &a, 1).len(), 5);
        assert_eq!(neighborhood(&g, &a, 2).len(), 13);
    }

    #[test]
    fn json_round_trip() {
        let g = Multigraph::from_edges(3, [(0, 1, 2), (1, 2, 1), (2, 2, 1)]).with_interior(vec![true, false, true]);
        let back = Multigraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.interior(), g.interior());
        assert_eq!(g.degree(2), 3);
        let dot = g.to_dot("g");
        assert_eq!(dot.matches("0 -- 1").count(), 2);
    }
}
