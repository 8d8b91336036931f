//! Eulerian walks, the two-sided separator, blockwise Hall matching and the
//! resulting Hamiltonian order in a bounded power of the host graph. Also the
//! translation between injective paths and free ℤ-actions.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{double_edges, Multigraph, PathKind, PathSeq, UNREACHABLE};
use crate::group::{enumerate_ball, Group, GroupSpec};

/// Closed Eulerian walk starting at the smallest vertex that has an edge.
pub fn eulerian_circuit(g: &Multigraph) -> Result<PathSeq> {
    let start = g.edges().first().map(|e| e.0).ok_or(if g.n() == 0 { Error::EmptyGraph } else { Error::NoEdges })?;
    eulerian_circuit_from(g, start)
}

/// Closed Eulerian walk from `start`. Hierholzer's splicing, always leaving a
/// vertex along its smallest-id unused edge.
pub fn eulerian_circuit_from(g: &Multigraph, start: usize) -> Result<PathSeq> {
    check_euler_input(g)?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::NotEven { vertex: v, degree: g.degree(v) });
    }
    if g.degree(start) == 0 {
        return Err(Error::Precondition(format!("start vertex {start} has no edges")));
    }
    Ok(hierholzer(g, start))
}

/// Open Eulerian trail between the two odd-degree vertices, starting at
/// `start` (which must be one of them).
pub fn eulerian_trail(g: &Multigraph, start: usize) -> Result<PathSeq> {
    check_euler_input(g)?;
    let odd: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).collect();
    match odd.len() {
        0 => eulerian_circuit_from(g, start),
        2 if odd.contains(&start) => Ok(hierholzer(g, start)),
        2 => Err(Error::Precondition(format!("trail must start at an odd vertex, not {start}"))),
        _ => Err(Error::NotEven { vertex: odd[2], degree: g.degree(odd[2]) }),
    }
}

fn check_euler_input(g: &Multigraph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

fn hierholzer(g: &Multigraph, start: usize) -> PathSeq {
    // Expand multiplicities into edge slots; slot ids follow the sorted edge list.
    let mut ends = Vec::with_capacity(g.edge_count());
    for &(u, v, m) in g.edges() {
        for _ in 0..m {
            ends.push((u, v));
        }
    }
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (id, &(u, v)) in ends.iter().enumerate() {
        inc[u].push(id);
        if u != v {
            inc[v].push(id);
        }
    }
    let mut used = vec![false; ends.len()];
    let mut ptr = vec![0usize; g.n()];
    let mut stack = vec![start];
    let mut out = Vec::with_capacity(ends.len() + 1);
    while let Some(&x) = stack.last() {
        while ptr[x] < inc[x].len() && used[inc[x][ptr[x]]] {
            ptr[x] += 1;
        }
        if ptr[x] == inc[x].len() {
            out.push(x);
            stack.pop();
        } else {
            let id = inc[x][ptr[x]];
            used[id] = true;
            let (u, v) = ends[id];
            stack.push(if u == x { v } else { u });
        }
    }
    out.reverse();
    PathSeq { vertices: out, kind: PathKind::Eulerian }
}

/// Closed walk traversing every edge of `g` exactly twice.
pub fn double_cover_walk(g: &Multigraph) -> Result<PathSeq> {
    match g.n() {
        0 => Err(Error::EmptyGraph),
        1 => Ok(PathSeq { vertices: vec![0], kind: PathKind::Walk }),
        _ => {
            let mut p = eulerian_circuit(&double_edges(g))?;
            p.kind = PathKind::Walk;
            Ok(p)
        }
    }
}

fn component_of(comp: &[usize], side: &BTreeSet<usize>) -> Result<usize> {
    let mut labels = side.iter().map(|&v| comp[v]);
    let first = labels.next().ok_or_else(|| Error::Precondition("marked side is empty".into()))?;
    if labels.any(|c| c != first) {
        return Err(Error::Precondition("a marked side spans several components".into()));
    }
    Ok(first)
}

fn normalize(set: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    set.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

/// Shrinks a separating edge set `f` to `E ⊆ f` such that `g − E` has exactly
/// two components, one holding each marked side.
///
/// Steps: keep the edges of `f` touching the component `C` of side A, then
/// the edges whose endpoints both lie in the two side components, then drop
/// any remaining edge whose endpoints are already joined in `g − E`.
pub fn refine_separator(
    g: &Multigraph,
    f: &BTreeSet<(usize, usize)>,
    side_a: &BTreeSet<usize>,
    side_b: &BTreeSet<usize>,
) -> Result<BTreeSet<(usize, usize)>> {
    if !side_a.is_disjoint(side_b) {
        return Err(Error::Precondition("marked sides overlap".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let f = normalize(f);
    let comp = g.without_edges(&f).components();
    let ca = component_of(&comp, side_a)?;
    let cb = component_of(&comp, side_b)?;
    if ca == cb {
        return Err(Error::NotSeparating);
    }
    let f1: BTreeSet<(usize, usize)> = f.iter().copied().filter(|&(u, v)| comp[u] == ca || comp[v] == ca).collect();
    let comp1 = g.without_edges(&f1).components();
    let (a1, b1) = (component_of(&comp1, side_a)?, component_of(&comp1, side_b)?);
    let in_sides = |x: usize| comp1[x] == a1 || comp1[x] == b1;
    let mut e: BTreeSet<(usize, usize)> = f1.iter().copied().filter(|&(u, v)| in_sides(u) && in_sides(v)).collect();
    for edge in e.clone() {
        let mut trial = e.clone();
        trial.remove(&edge);
        let c = g.without_edges(&trial).components();
        let (ta, tb) = (component_of(&c, side_a)?, component_of(&c, side_b)?);
        if ta != tb {
            e = trial;
        }
    }
    let c = g.without_edges(&e).components();
    let count = c.iter().copied().max().map_or(0, |m| m + 1);
    if count != 2 || component_of(&c, side_a)? == component_of(&c, side_b)? {
        return Err(Error::Internal("refined separator does not leave two side components".into()));
    }
    Ok(e)
}

/// Walk for the two-sided case: `g − E` has components `C1 ∋ side A` and
/// `C2 ∋ side B`. Each half is doubled off a shortest ray from the junction
/// vertex `p` towards its side, and the union is traversed by an Eulerian
/// trail. Every vertex is visited and every host edge is used at most twice.
pub fn two_ended_walk(
    g: &Multigraph,
    e: &BTreeSet<(usize, usize)>,
    side_a: &BTreeSet<usize>,
    side_b: &BTreeSet<usize>,
) -> Result<PathSeq> {
    let e = normalize(e);
    let comp = g.without_edges(&e).components();
    let c1 = component_of(&comp, side_a)?;
    let c2 = component_of(&comp, side_b)?;
    if c1 == c2 || comp.iter().any(|&c| c != c1 && c != c2) {
        return Err(Error::NotSeparating);
    }
    let p = (0..g.n())
        .find(|&v| comp[v] == c1 && g.neighbors(v).iter().any(|&w| comp[w] == c2))
        .ok_or(Error::NotConnected)?;
    let in1 = |v: usize| comp[v] == c1;
    let in2 = |v: usize| comp[v] == c2 || v == p;
    let half = |member: &dyn Fn(usize) -> bool, side: &BTreeSet<usize>| -> Vec<(usize, usize, usize)> {
        let sub = Multigraph::from_edges(
            g.n(),
            g.edges().iter().copied().filter(|&(u, v, _)| member(u) && member(v)),
        );
        let ray = shortest_path_to(&sub, p, side);
        let on_ray: BTreeSet<(usize, usize)> = ray.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        sub.edges()
            .iter()
            .map(|&(u, v, m)| if on_ray.contains(&(u, v)) { (u, v, m) } else { (u, v, 2 * m) })
            .collect()
    };
    let mut edges = half(&in1, side_a);
    edges.extend(half(&in2, side_b));
    let lam = Multigraph::from_edges(g.n(), edges);
    let odd: Vec<usize> = (0..g.n()).filter(|&v| lam.degree(v) % 2 == 1).collect();
    let start = odd.first().copied().unwrap_or(p);
    if lam.edge_count() == 0 {
        return Ok(PathSeq { vertices: vec![p], kind: PathKind::Walk });
    }
    let mut walk = eulerian_trail(&lam, start)?;
    walk.kind = PathKind::Walk;
    Ok(walk)
}

/// Shortest path from `src` to the nearest vertex of `targets` (smallest id
/// among the nearest), following smallest-id predecessors.
fn shortest_path_to(g: &Multigraph, src: usize, targets: &BTreeSet<usize>) -> Vec<usize> {
    let dist = g.bfs(src);
    let Some(&t) = targets.iter().filter(|&&t| dist[t] != UNREACHABLE).min_by_key(|&&t| (dist[t], t)) else {
        return vec![src];
    };
    let mut path = vec![t];
    let mut x = t;
    while x != src {
        x = *g.neighbors(x).iter().find(|&&y| dist[y] + 1 == dist[x]).expect("bfs predecessor");
        path.push(x);
    }
    path.reverse();
    path
}

/// Result of the blockwise matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallSelection {
    /// Block length `M = D + 1`.
    pub m: usize,
    /// Offset `φ(k)` chosen in each full block `k`.
    pub phi: Vec<usize>,
    /// Walk indices kept, ascending: `kM + φ(k)` plus one index per vertex
    /// left unmatched (its first visit).
    pub s: Vec<usize>,
}

impl HallSelection {
    pub fn max_gap(&self) -> usize {
        self.s.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }
}

/// The bipartite graph between full `M`-blocks of a walk and host vertices.
#[derive(Debug, Clone)]
pub struct BlockBipartite {
    pub m: usize,
    /// Distinct vertices of each block, paired with their first offset.
    pub blocks: Vec<Vec<(usize, usize)>>,
}

impl BlockBipartite {
    pub fn new(walk: &[usize], m: usize) -> BlockBipartite {
        let blocks = walk
            .chunks_exact(m)
            .map(|chunk| {
                let mut seen: Vec<(usize, usize)> = Vec::new();
                for (i, &v) in chunk.iter().enumerate() {
                    if !seen.iter().any(|&(w, _)| w == v) {
                        seen.push((v, i));
                    }
                }
                seen
            })
            .collect();
        BlockBipartite { m, blocks }
    }

    /// `|∂T|`: distinct host vertices adjacent to the block set `t`.
    pub fn boundary_size(&self, t: &[usize]) -> usize {
        let set: BTreeSet<usize> = t.iter().flat_map(|&k| self.blocks[k].iter().map(|p| p.0)).collect();
        set.len()
    }
}

/// Distinct host edges walked inside the blocks of `t` (the graph `Φ_T`).
pub fn phi_t_edge_count(walk: &[usize], m: usize, t: &[usize]) -> usize {
    let mut set = BTreeSet::new();
    for &k in t {
        for i in 0..m.saturating_sub(1) {
            let (a, b) = (walk[k * m + i], walk[k * m + i + 1]);
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.len()
}

/// Matches every full `M`-block of the walk to a distinct vertex it visits,
/// then completes `S` with first visits of the unmatched vertices.
pub fn hall_select(walk: &PathSeq, d: usize, n_vertices: usize) -> Result<HallSelection> {
    let m = d + 1;
    let p = &walk.vertices;
    let bip = BlockBipartite::new(p, m);
    let nb = bip.blocks.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n_vertices];
    let mut match_left: Vec<Option<usize>> = vec![None; nb];
    for k in 0..nb {
        let mut visited = vec![false; nb];
        if !augment(k, &bip, &mut match_left, &mut match_right, &mut visited) {
            let t: Vec<usize> = (0..nb).filter(|&j| visited[j]).collect();
            let neighbours = bip.boundary_size(&t);
            return Err(Error::HallViolation { blocks: t, neighbours });
        }
    }
    let mut phi = Vec::with_capacity(nb);
    let mut s = Vec::with_capacity(n_vertices);
    let mut matched = vec![false; n_vertices];
    for (k, ml) in match_left.iter().enumerate() {
        let v = ml.expect("all blocks matched");
        let off = bip.blocks[k].iter().find(|x| x.0 == v).expect("adjacent").1;
        phi.push(off);
        s.push(k * m + off);
        matched[v] = true;
    }
    let mut first_visit = vec![usize::MAX; n_vertices];
    for (i, &v) in p.iter().enumerate().rev() {
        first_visit[v] = i;
    }
    for v in 0..n_vertices {
        if !matched[v] {
            if first_visit[v] == usize::MAX {
                return Err(Error::Precondition(format!("walk never visits vertex {v}")));
            }
            s.push(first_visit[v]);
        }
    }
    s.sort_unstable();
    Ok(HallSelection { m, phi, s })
}

fn augment(
    k: usize,
    bip: &BlockBipartite,
    ml: &mut [Option<usize>],
    mr: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    visited[k] = true;
    for &(v, _) in &bip.blocks[k] {
        let free = match mr[v] {
            None => true,
            Some(j) => !visited[j] && augment(j, bip, ml, mr, visited),
        };
        if free {
            mr[v] = Some(k);
            ml[k] = Some(v);
            return true;
        }
    }
    false
}

/// Counts from a scan of the Hall inequality over block subsets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HallCheck {
    pub subsets_checked: usize,
    pub exhaustive: bool,
    /// Block sets with `|∂T| < |T|`.
    pub violations: Vec<Vec<usize>>,
    /// Block sets with `2|E(Φ_T)| < |T|(M − 1)`.
    pub edge_bound_violations: Vec<Vec<usize>>,
}

/// Checks `|∂T| ≥ |T|` and the `Φ_T` edge bound on block subsets of size at
/// most `max_size`: all of them when there are at most 12 blocks, otherwise
/// every contiguous run plus `samples` seeded random subsets.
pub fn check_hall_condition(walk: &[usize], m: usize, max_size: usize, samples: usize, seed: u64) -> HallCheck {
    let bip = BlockBipartite::new(walk, m);
    let nb = bip.blocks.len();
    let mut report = HallCheck { exhaustive: nb <= 12, ..Default::default() };
    let test = |t: &[usize], report: &mut HallCheck| {
        report.subsets_checked += 1;
        if bip.boundary_size(t) < t.len() {
            report.violations.push(t.to_vec());
        }
        if 2 * phi_t_edge_count(walk, m, t) < t.len() * (m - 1) {
            report.edge_bound_violations.push(t.to_vec());
        }
    };
    if nb <= 12 {
        for mask in 1u32..(1u32 << nb) {
            let t: Vec<usize> = (0..nb).filter(|&i| mask >> i & 1 == 1).collect();
            if t.len() <= max_size {
                test(&t, &mut report);
            }
        }
        return report;
    }
    for len in 1..=max_size.min(nb) {
        for start in 0..=nb - len {
            let t: Vec<usize> = (start..start + len).collect();
            test(&t, &mut report);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..nb).collect();
    for _ in 0..samples {
        let size = rng.gen_range(1..=max_size.min(nb));
        let mut t: Vec<usize> = all.choose_multiple(&mut rng, size).copied().collect();
        t.sort_unstable();
        test(&t, &mut report);
    }
    report
}

/// Everything produced on the way to a Hamiltonian order.
#[derive(Debug, Clone)]
pub struct HamiltonianOrder {
    pub walk: PathSeq,
    pub selection: HallSelection,
    pub order: PathSeq,
    /// Maximum host degree `D`.
    pub d: usize,
    /// Power `2D + 1` of the host graph in which `order` is Hamiltonian.
    pub power_k: usize,
}

/// Hamiltonian sequence of `g` whose steps have host distance at most
/// `2D + 1`, built from the closed double-cover walk.
pub fn hamiltonian_in_power(g: &Multigraph) -> Result<HamiltonianOrder> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let walk = double_cover_walk(g)?;
    hamiltonian_from_walk(g, walk)
}

/// Same as [`hamiltonian_in_power`] with a caller-provided walk that visits
/// every vertex and uses each host edge at most twice.
pub fn hamiltonian_from_walk(g: &Multigraph, walk: PathSeq) -> Result<HamiltonianOrder> {
    let d = g.max_degree();
    let selection = hall_select(&walk, d, g.n())?;
    let order = PathSeq {
        vertices: selection.s.iter().map(|&i| walk.vertices[i]).collect(),
        kind: PathKind::Hamiltonian,
    };
    Ok(HamiltonianOrder { walk, selection, order, d, power_k: 2 * d + 1 })
}

/// Reorders a closed walk to start at its first visit of `v`.
pub fn rotate_closed_walk(walk: &PathSeq, v: usize) -> Option<PathSeq> {
    let p = &walk.vertices;
    if p.len() < 2 || p.first() != p.last() {
        return (p.first() == Some(&v)).then(|| walk.clone());
    }
    let i = p.iter().position(|&x| x == v)?;
    let mut out: Vec<usize> = p[i..p.len() - 1].to_vec();
    out.extend_from_slice(&p[..=i]);
    Some(PathSeq { vertices: out, kind: walk.kind })
}

/// Index lookup for an injective path, giving the ℤ-action
/// `v * n = P(n + P⁻¹(v))`.
#[derive(Debug, Clone)]
pub struct PathAction {
    seq: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl PathAction {
    pub fn new(path: &PathSeq, n_vertices: usize) -> Result<PathAction> {
        let mut pos = vec![None; n_vertices];
        for (i, &v) in path.vertices.iter().enumerate() {
            if v >= n_vertices {
                return Err(Error::Precondition(format!("vertex {v} out of range")));
            }
            if pos[v].replace(i).is_some() {
                return Err(Error::NotBijective(format!("path revisits vertex {v}")));
            }
        }
        Ok(PathAction { seq: path.vertices.clone(), pos })
    }

    pub fn act(&self, v: usize, n: i64) -> Result<usize> {
        let i = self.pos.get(v).copied().flatten().ok_or_else(|| Error::Precondition(format!("vertex {v} not on path")))?;
        let j = i as i64 + n;
        if j < 0 || j >= self.seq.len() as i64 {
            return Err(Error::WindowExhausted { index: j, len: self.seq.len() });
        }
        Ok(self.seq[j as usize])
    }

    /// The action as a table with one generator (`+1`).
    pub fn to_table(&self) -> ActionTable {
        let mut map = vec![None; self.pos.len()];
        for w in self.seq.windows(2) {
            map[w[0]] = Some(w[1]);
        }
        ActionTable { acting: GroupSpec::free_abelian(1), maps: vec![map] }
    }
}

/// `v * n = P(n + P⁻¹(v))`.
pub fn action_from_path(path: &PathSeq, n_vertices: usize, v: usize, n: i64) -> Result<usize> {
    PathAction::new(path, n_vertices)?.act(v, n)
}

/// A right action of a finitely generated group on `0..domain`, given by the
/// (possibly partial) permutation of each standard generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    pub acting: GroupSpec,
    pub maps: Vec<Vec<Option<usize>>>,
}

impl ActionTable {
    pub fn domain(&self) -> usize {
        self.maps.first().map_or(0, Vec::len)
    }

    fn inverse_map(&self, gen: usize) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.domain()];
        for (x, y) in self.maps[gen].iter().enumerate() {
            if let Some(y) = y {
                inv[*y] = Some(x);
            }
        }
        inv
    }

    /// `x * w` for a word of acting-group tokens, applied left to right.
    pub fn apply_word(&self, x: usize, word: &[(usize, bool)]) -> Option<usize> {
        let inverses: Vec<_> = (0..self.maps.len()).map(|g| self.inverse_map(g)).collect();
        self.apply_word_with(&inverses, x, word)
    }

    fn apply_word_with(&self, inverses: &[Vec<Option<usize>>], x: usize, word: &[(usize, bool)]) -> Option<usize> {
        let mut y = x;
        for &(gen, inverse) in word {
            y = if inverse { inverses[gen][y]? } else { self.maps[gen][y]? };
        }
        Some(y)
    }

    /// Checks that every generator map is a partial injection.
    pub fn validate(&self) -> Result<()> {
        for (g, map) in self.maps.iter().enumerate() {
            if map.len() != self.domain() {
                return Err(Error::Precondition("generator maps of different lengths".into()));
            }
            let mut seen = vec![false; map.len()];
            for y in map.iter().flatten() {
                if *y >= map.len() || std::mem::replace(&mut seen[*y], true) {
                    return Err(Error::NotBijective(format!("generator {g} is not injective")));
                }
            }
        }
        Ok(())
    }
}

/// Pulls `act` back along the bijection `phi: X → Y`:
/// `x * h = phi⁻¹(phi(x) * h)`.
pub fn conjugate_action(phi: &[usize], act: &ActionTable) -> Result<ActionTable> {
    let n = act.domain();
    if phi.len() != n {
        return Err(Error::NotBijective(format!("map has {} points, action domain {}", phi.len(), n)));
    }
    let mut inv = vec![usize::MAX; n];
    for (x, &y) in phi.iter().enumerate() {
        if y >= n || inv[y] != usize::MAX {
            return Err(Error::NotBijective(format!("point {y} hit twice or out of range")));
        }
        inv[y] = x;
    }
    let maps = act
        .maps
        .iter()
        .map(|m| phi.iter().map(|&y| m[y].map(|z| inv[z])).collect())
        .collect();
    Ok(ActionTable { acting: act.acting.clone(), maps })
}

/// Findings of [`verify_translation_like`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationReport {
    /// `(x, word)` pairs with `x * word = x` for a non-trivial word.
    pub freeness_violations: Vec<(usize, String)>,
    /// Maximum host displacement of each generator and its inverse, over
    /// interior points where defined.
    pub max_displacement: Vec<usize>,
    /// Orbit-map Lipschitz constant: the largest displacement above.
    pub lipschitz_c: usize,
    /// Interior points where some generator is undefined.
    pub undefined_points: usize,
    pub max_word_len: usize,
}

impl TranslationReport {
    pub fn is_free(&self) -> bool {
        self.freeness_violations.is_empty()
    }
}

/// Scans an action on the interior of `host`: freeness for every non-trivial
/// acting word up to `max_word_len`, and displacement per generator.
pub fn verify_translation_like(act: &ActionTable, host: &Multigraph, max_word_len: usize) -> Result<TranslationReport> {
    act.validate()?;
    if act.domain() != host.n() {
        return Err(Error::Precondition("action domain differs from host size".into()));
    }
    let acting = Group::new(&act.acting)?;
    let gens = acting.generating_set()?;
    let words = enumerate_ball(&acting, &gens, max_word_len)?;
    let tokenized: Vec<(String, Vec<(usize, bool)>)> = words
        .elements()
        .iter()
        .skip(1)
        .map(|e| (acting.render(e), acting.word(e).into_iter().map(|t| (t.letter, t.inverse)).collect()))
        .collect();
    let interior = host.interior();
    let inverses: Vec<Vec<Option<usize>>> = (0..act.maps.len()).map(|g| act.inverse_map(g)).collect();
    let mut max_displacement = vec![0; 2 * act.maps.len()];
    let mut undefined = BTreeSet::new();
    let mut violations = Vec::new();
    for &x in &interior {
        let dist = host.bfs(x);
        for (g, (map, inv)) in act.maps.iter().zip(&inverses).enumerate() {
            for (slot, y) in [(2 * g, map[x]), (2 * g + 1, inv[x])] {
                match y {
                    Some(y) => max_displacement[slot] = max_displacement[slot].max(dist[y]),
                    None => {
                        undefined.insert(x);
                    }
                }
            }
        }
        for (name, w) in &tokenized {
            if act.apply_word_with(&inverses, x, w) == Some(x) {
                violations.push((x, name.clone()));
            }
        }
    }
    let lipschitz_c = max_displacement.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0);
    Ok(TranslationReport {
        freeness_violations: violations,
        max_displacement,
        lipschitz_c,
        undefined_points: undefined.len(),
        max_word_len,
    })
}

/// Orbit of `base` under a ℤ-action table, from its first point onward.
pub fn path_of_action(act: &ActionTable, base: usize) -> PathSeq {
    let inv = act.inverse_map(0);
    let mut start = base;
    let mut steps = 0;
    while let Some(p) = inv[start] {
        start = p;
        steps += 1;
        if steps > act.domain() {
            break;
        }
    }
    let mut out = vec![start];
    let mut x = start;
    while let Some(y) = act.maps[0][x] {
        if out.len() > act.domain() {
            break;
        }
        out.push(y);
        x = y;
    }
    PathSeq { vertices: out, kind: PathKind::Walk }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use std::collections::BTreeMap;

    fn edge_multiset(g: &Multigraph) -> BTreeMap<(usize, usize), usize> {
        g.edges().iter().map(|&(u, v, m)| ((u, v), m)).collect()
    }

    #[test]
    fn triangle_circuit() {
        let c = eulerian_circuit(&cycle(3)).unwrap();
        assert_eq!(c.vertices, vec![0, 1, 2, 0]);
    }

    #[test]
    fn doubled_path_circuit_uses_each_copy_once() {
        let g = double_edges(&path(3));
        let c = eulerian_circuit(&g).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.traversal_counts(), edge_multiset(&g));
    }

    #[test]
    fn euler_errors() {
        assert!(matches!(eulerian_circuit(&complete(4)), Err(Error::NotEven { .. })));
        let two = Multigraph::from_edges(4, [(0, 1, 2), (2, 3, 2)]);
        assert_eq!(eulerian_circuit(&two), Err(Error::NotConnected));
        assert_eq!(eulerian_circuit(&Multigraph::from_edges(1, [])), Err(Error::NoEdges));
    }

    #[test]
    fn loops_and_trails() {
        let g = Multigraph::from_edges(2, [(0, 0, 1), (0, 1, 2)]);
        let c = eulerian_circuit(&g).unwrap();
        assert_eq!(c.len(), 4);
        let t = eulerian_trail(&path(4), 0).unwrap();
        assert_eq!(t.vertices, vec![0, 1, 2, 3]);
        assert!(eulerian_trail(&path(4), 1).is_err());
    }

    fn barbell() -> Multigraph {
        Multigraph::simple(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    }

    #[test]
    fn separator_examples() {
        let g = barbell();
        let a = BTreeSet::from([0]);
        let b = BTreeSet::from([5]);
        let bridge = BTreeSet::from([(2, 3)]);
        assert_eq!(refine_separator(&g, &bridge, &a, &b).unwrap(), bridge);
        let f = BTreeSet::from([(2, 3), (0, 1)]);
        assert_eq!(refine_separator(&g, &f, &a, &b).unwrap(), bridge);
        assert_eq!(refine_separator(&g, &BTreeSet::new(), &a, &b), Err(Error::NotSeparating));
    }

    #[test]
    fn separator_reconnects_stranded_pieces() {
        // path 0-1-2-3-4-5-6, F cuts out {2} and {4} as finite pieces
        let g = path(7);
        let f = BTreeSet::from([(1, 2), (2, 3), (3, 4), (4, 5)]);
        let e = refine_separator(&g, &f, &BTreeSet::from([0]), &BTreeSet::from([6])).unwrap();
        assert_eq!(e.len(), 1);
        let c = g.without_edges(&e).components();
        assert_eq!(c.iter().max(), Some(&1));
    }

    #[test]
    fn double_cover_counts() {
        assert_eq!(double_cover_walk(&path(2)).unwrap().vertices, vec![0, 1, 0]);
        for g in [cycle(3), star(3)] {
            let w = double_cover_walk(&g).unwrap();
            assert_eq!(w.len(), 7);
            assert!(w.traversal_counts().values().all(|&c| c == 2));
            assert_eq!(w.vertices.first(), w.vertices.last());
        }
        assert_eq!(double_cover_walk(&Multigraph::from_edges(0, [])), Err(Error::EmptyGraph));
    }

    #[test]
    fn hall_single_edge() {
        let w = PathSeq { vertices: vec![0, 1, 0], kind: PathKind::Walk };
        let sel = hall_select(&w, 1, 2).unwrap();
        assert_eq!(sel.m, 2);
        assert_eq!(sel.phi, vec![0]);
        assert_eq!(sel.s, vec![0, 1]);
    }

    #[test]
    fn hall_failure_reports_witness() {
        // a walk that is not a path in any degree-1 host: one vertex repeated
        let w = PathSeq { vertices: vec![0, 0, 0, 0], kind: PathKind::Walk };
        match hall_select(&w, 1, 1) {
            Err(Error::HallViolation { blocks, neighbours }) => {
                assert!(neighbours < blocks.len());
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn action_from_boustrophedon() {
        // 3x3 grid, rows snake left-right then right-left
        let order = vec![0, 1, 2, 5, 4, 3, 6, 7, 8];
        let p = PathSeq { vertices: order.clone(), kind: PathKind::Hamiltonian };
        assert_eq!(action_from_path(&p, 9, 0, 1).unwrap(), 1);
        assert_eq!(action_from_path(&p, 9, 4, 0).unwrap(), 4);
        assert_eq!(action_from_path(&p, 9, 2, 1).unwrap(), 5);
        assert!(matches!(action_from_path(&p, 9, 8, 1), Err(Error::WindowExhausted { .. })));
        let pa = PathAction::new(&p, 9).unwrap();
        for v in 0..9 {
            for m in -3i64..3 {
                for n in -3i64..3 {
                    if let (Ok(x), Ok(y)) = (pa.act(v, m), pa.act(v, m + n)) {
                        if let Ok(z) = pa.act(x, n) {
                            assert_eq!(z, y);
                        }
                    }
                }
            }
        }
        assert_eq!(path_of_action(&pa.to_table(), 4).vertices, order);
    }

    #[test]
    fn shift_and_trivial_actions() {
        let g = path(9).with_interior((0..9).map(|v| (2..7).contains(&v)).collect());
        let shift = ActionTable {
            acting: GroupSpec::free_abelian(1),
            maps: vec![(0..9).map(|x| (x + 1 < 9).then_some(x + 1)).collect()],
        };
        let r = verify_translation_like(&shift, &g, 3).unwrap();
        assert!(r.is_free());
        assert_eq!(r.lipschitz_c, 1);
        let trivial = ActionTable { acting: GroupSpec::free_abelian(1), maps: vec![(0..9).map(Some).collect()] };
        assert!(!verify_translation_like(&trivial, &g, 1).unwrap().is_free());
    }

    #[test]
    fn conjugation_by_rotation() {
        let succ = ActionTable { acting: GroupSpec::free_abelian(1), maps: vec![(0..6).map(|x| Some((x + 1) % 6)).collect()] };
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(conjugate_action(&id, &succ).unwrap(), succ);
        let rot: Vec<usize> = (0..6).map(|x| (x + 2) % 6).collect();
        let c = conjugate_action(&rot, &succ).unwrap();
        assert_eq!(c, succ);
        let flip: Vec<usize> = (0..6).map(|x| (6 - x) % 6).collect();
        let c = conjugate_action(&flip, &succ).unwrap();
        assert_eq!(c.maps[0][0], Some(5));
        assert!(conjugate_action(&[0, 0, 1, 2, 3, 4], &succ).is_err());
    }
}
