//! Rooted trees with bounded degrees, perimeters, and the level-by-level
//! quasi-isometry from a regular tree onto a bounded-degree tree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

const DEFAULT_TREE_CAP: usize = 5_000_000;

/// How vertex degrees of a [`RootedTree`] are decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeRule {
    /// Every vertex has degree `k`.
    Regular(usize),
    /// Degree drawn from `lo..=hi` by hashing the vertex's path from the
    /// root, so the tree does not depend on the order of expansion.
    Seeded { lo: usize, hi: usize, seed: u64 },
    /// Finite tree read from data; its leaves are truncation points.
    Explicit,
}

/// A rooted tree expanded on demand. Vertex 0 is the root; the children of a
/// vertex receive consecutive ids when it is first expanded.
#[derive(Debug, Clone)]
pub struct RootedTree {
    rule: DegreeRule,
    root_degree: Option<usize>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    hash: Vec<u64>,
    /// Position among its siblings.
    slot: Vec<usize>,
    children: Vec<Option<Vec<usize>>>,
    /// Explicit trees only: the nested child lists still to be allocated.
    pending: Vec<Option<Vec<Value>>>,
    cap: usize,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl RootedTree {
    fn with_rule(rule: DegreeRule, root_degree: Option<usize>, root_hash: u64) -> RootedTree {
        RootedTree {
            rule,
            root_degree,
            parent: vec![None],
            depth: vec![0],
            hash: vec![root_hash],
            slot: vec![0],
            children: vec![None],
            pending: vec![None],
            cap: DEFAULT_TREE_CAP,
        }
    }

    pub fn regular(k: usize) -> RootedTree {
        RootedTree::with_rule(DegreeRule::Regular(k), None, 0)
    }

    pub fn seeded(lo: usize, hi: usize, seed: u64) -> RootedTree {
        assert!(lo <= hi, "empty degree range");
        RootedTree::with_rule(DegreeRule::Seeded { lo, hi, seed }, None, splitmix(seed))
    }

    /// A finite tree given as nested child lists: `[[], [[], []]]` is a root
    /// with two children, the second of which has two children.
    pub fn explicit(nested: &Value) -> Result<RootedTree> {
        let kids = nested.as_array().ok_or_else(|| Error::Parse("tree node must be an array".into()))?;
        let mut t = RootedTree::with_rule(DegreeRule::Explicit, None, 0);
        t.pending[0] = Some(kids.clone());
        Ok(t)
    }

    /// Reads `{"regular": k}`, `{"seeded": {lo, hi, seed}}` or
    /// `{"explicit": nested}`, each with an optional `"root_degree"`.
    pub fn from_json(v: &Value) -> Result<RootedTree> {
        let mut t = if let Some(k) = v.get("regular").and_then(Value::as_u64) {
            RootedTree::regular(k as usize)
        } else if let Some(s) = v.get("seeded") {
            let get = |k: &str| s.get(k).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("seeded tree needs {k}")));
            let (lo, hi) = (get("lo")? as usize, get("hi")? as usize);
            if lo > hi {
                return Err(Error::Parse("seeded tree needs lo <= hi".into()));
            }
            RootedTree::seeded(lo, hi, get("seed")?)
        } else if let Some(e) = v.get("explicit") {
            RootedTree::explicit(e)?
        } else {
            return Err(Error::Parse("tree json needs regular, seeded or explicit".into()));
        };
        if let Some(d) = v.get("root_degree").and_then(Value::as_u64) {
            t = t.with_root_degree(d as usize);
        }
        Ok(t)
    }

    pub fn with_root_degree(mut self, d: usize) -> RootedTree {
        if self.rule != DegreeRule::Explicit {
            self.root_degree = Some(d);
        }
        self
    }

    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn rule(&self) -> &DegreeRule {
        &self.rule
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Number of vertices allocated so far.
    pub fn materialized(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn is_expanded(&self, v: usize) -> bool {
        self.children[v].is_some()
    }

    /// Children of an already expanded vertex.
    pub fn known_children(&self, v: usize) -> Option<&[usize]> {
        self.children[v].as_deref()
    }

    fn child_count(&self, v: usize) -> Result<usize> {
        let deg = |h: u64| match self.rule {
            DegreeRule::Regular(k) => k,
            DegreeRule::Seeded { lo, hi, .. } => lo + (h % (hi - lo + 1) as u64) as usize,
            DegreeRule::Explicit => unreachable!(),
        };
        if v == 0 {
            return Ok(self.root_degree.unwrap_or_else(|| deg(self.hash[0])));
        }
        Ok(deg(self.hash[v]).saturating_sub(1))
    }

    /// Children of `v`, expanding it if needed.
    pub fn children(&mut self, v: usize) -> Result<Vec<usize>> {
        if let Some(c) = &self.children[v] {
            return Ok(c.clone());
        }
        let nested = if self.rule == DegreeRule::Explicit {
            let kids = self.pending[v].take().unwrap_or_default();
            if kids.is_empty() {
                return Err(Error::InsufficientDepth(self.label(v)));
            }
            Some(kids)
        } else {
            None
        };
        let count = match &nested {
            Some(k) => k.len(),
            None => self.child_count(v)?,
        };
        if self.parent.len() + count > self.cap {
            return Err(Error::SizeCap { estimate: (self.parent.len() + count) as u128, cap: self.cap });
        }
        let mut ids = Vec::with_capacity(count);
        for i in 0..count {
            let id = self.parent.len();
            self.parent.push(Some(v));
            self.depth.push(self.depth[v] + 1);
            self.hash.push(splitmix(self.hash[v] ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            self.slot.push(i);
            self.children.push(None);
            let sub = match &nested {
                Some(k) => Some(
                    k[i].as_array().cloned().ok_or_else(|| Error::Parse("tree node must be an array".into()))?,
                ),
                None => None,
            };
            self.pending.push(sub);
            ids.push(id);
        }
        self.children[v] = Some(ids.clone());
        Ok(ids)
    }

    /// Degree of `v` in the whole tree.
    pub fn degree(&mut self, v: usize) -> Result<usize> {
        Ok(self.children(v)?.len() + usize::from(v != 0))
    }

    /// Expands every vertex of depth below `d`; returns the ids of depth at
    /// most `d` in breadth-first order.
    pub fn materialize(&mut self, d: usize) -> Result<Vec<usize>> {
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            if self.depth[v] < d {
                order.extend(self.children(v)?);
            }
            i += 1;
        }
        Ok(order)
    }

    /// Path label such as `r.0.2`.
    pub fn label(&self, v: usize) -> String {
        let mut parts = Vec::new();
        let mut x = v;
        while let Some(p) = self.parent[x] {
            parts.push(self.slot[x].to_string());
            x = p;
        }
        parts.push("r".to_string());
        parts.reverse();
        parts.join(".")
    }

    /// `u ≼ v`: `u` lies on the geodesic from the root to `v`.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        if self.depth[u] > self.depth[v] {
            return false;
        }
        let mut x = v;
        while self.depth[x] > self.depth[u] {
            x = self.parent[x].expect("depth > 0 has parent");
        }
        x == u
    }

    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("parent");
        }
        while a != b {
            a = self.parent[a].expect("parent");
            b = self.parent[b].expect("parent");
        }
        a
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        let w = self.lca(a, b);
        self.depth[a] + self.depth[b] - 2 * self.depth[w]
    }
}

/// A perimeter of the subtree hanging below `root` through `root_children`,
/// with its multiplicity map `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perimeter {
    pub root: usize,
    /// Members in construction order with their multiplicities.
    pub members: Vec<(usize, usize)>,
    /// Largest depth of a member below the root.
    pub radius: usize,
}

impl Perimeter {
    pub fn total(&self) -> usize {
        self.members.iter().map(|m| m.1).sum()
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.members.iter().map(|m| m.0).collect()
    }
}

/// Perimeter of radius at most `r` with multiplicities summing to `r`, for the
/// whole tree rooted at its root.
pub fn perimeter_decompose(tree: &mut RootedTree, r: usize) -> Result<Perimeter> {
    let kids = tree.children(0)?;
    decompose(tree, 0, &kids, r)
}

/// The recursion behind [`perimeter_decompose`] on the subtree whose root is
/// `root` and whose top-level branches are `root_children`.
pub fn decompose(tree: &mut RootedTree, root: usize, root_children: &[usize], r: usize) -> Result<Perimeter> {
    let k = root_children.len();
    if r < 3 {
        return Err(Error::Precondition(format!("perimeter parameter {r} < 3")));
    }
    if k < 2 || k > r - 1 {
        return Err(Error::Precondition(format!("root degree {k} outside [2, {}]", r - 1)));
    }
    let mut members = Vec::new();
    if r == 3 {
        members.push((root_children[0], 2));
        members.push((root_children[1], 1));
        for &(c, m) in &members {
            check_member_degree(tree, c, m)?;
        }
    } else {
        let (q, s) = (r / k, r % k);
        for (i, &c) in root_children.iter().enumerate() {
            let share = if i < k - s { q } else { q + 1 };
            let deg = tree.degree(c)?;
            if deg < 3 {
                return Err(Error::DegreeWindow(format!("vertex {} has degree {deg} < 3", tree.label(c))));
            }
            if share < deg {
                members.push((c, share));
            } else {
                let kids = tree.children(c)?;
                members.extend(decompose(tree, c, &kids, share)?.members);
            }
        }
    }
    let base = tree.depth(root);
    let radius = members.iter().map(|&(p, _)| tree.depth(p) - base).max().unwrap_or(0);
    if radius > r {
        return Err(Error::Internal(format!("perimeter radius {radius} exceeds {r}")));
    }
    Ok(Perimeter { root, members, radius })
}

fn check_member_degree(tree: &mut RootedTree, c: usize, m: usize) -> Result<()> {
    let deg = tree.degree(c)?;
    if deg < 3 {
        return Err(Error::DegreeWindow(format!("vertex {} has degree {deg} < 3", tree.label(c))));
    }
    if m > deg - 1 {
        return Err(Error::Internal(format!("multiplicity {m} exceeds degree bound at {}", tree.label(c))));
    }
    Ok(())
}

/// Outcome of checking the perimeter axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerimeterCheck {
    pub sum_ok: bool,
    pub degree_ok: bool,
    pub antichain_ok: bool,
    pub covering_ok: bool,
    pub not_root_ok: bool,
    pub radius_ok: bool,
}

impl PerimeterCheck {
    pub fn all(&self) -> bool {
        self.sum_ok && self.degree_ok && self.antichain_ok && self.covering_ok && self.not_root_ok && self.radius_ok
    }
}

/// Independent check of a perimeter against the definition. `expected_sum`
/// and `max_radius` are skipped when `None`.
pub fn check_perimeter(
    tree: &mut RootedTree,
    root: usize,
    root_children: &[usize],
    members: &[(usize, usize)],
    expected_sum: Option<usize>,
    max_radius: Option<usize>,
) -> Result<PerimeterCheck> {
    let set: BTreeSet<usize> = members.iter().map(|m| m.0).collect();
    let sum_ok = expected_sum.is_none_or(|s| members.iter().map(|m| m.1).sum::<usize>() == s);
    let mut degree_ok = set.len() == members.len();
    for &(p, d) in members {
        let deg = tree.degree(p)?;
        degree_ok &= d >= 1 && d < deg;
    }
    let base = tree.depth(root);
    let inside = |t: &RootedTree, p: usize| {
        t.precedes(root, p) && (p == root || root_children.iter().any(|&c| t.precedes(c, p)))
    };
    let mut antichain_ok = members.iter().all(|&(p, _)| inside(tree, p));
    for &(p, _) in members {
        let mut x = p;
        while x != root {
            x = tree.parent(x).expect("inside the subtree");
            if set.contains(&x) {
                antichain_ok = false;
            }
        }
    }
    let not_root_ok = !(set.len() == 1 && set.contains(&root)) && !set.is_empty();
    let radius = members.iter().map(|&(p, _)| tree.depth(p).saturating_sub(base)).max().unwrap_or(0);
    let radius_ok = max_radius.is_none_or(|r| radius <= r);
    // Every branch must meet the set no deeper than `radius`.
    let mut covering_ok = antichain_ok;
    let mut stack: Vec<usize> = if set.contains(&root) { Vec::new() } else { root_children.to_vec() };
    while covering_ok {
        let Some(x) = stack.pop() else { break };
        if set.contains(&x) {
            continue;
        }
        if tree.depth(x) - base >= radius {
            covering_ok = false;
            break;
        }
        stack.extend(tree.children(x)?);
    }
    Ok(PerimeterCheck { sum_ok, degree_ok, antichain_ok, covering_ok, not_root_ok, radius_ok })
}

/// Recomputed truth values of the eight clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClauseCertificates {
    pub clauses: [bool; 8],
}

impl ClauseCertificates {
    pub fn all(&self) -> bool {
        self.clauses.iter().all(|&c| c)
    }
}

/// The map from the depth-`depth` ball of the `(r+1)`-regular tree into a
/// target tree with degrees in `[3, r]`.
#[derive(Debug, Clone)]
pub struct TreeMap {
    pub r: usize,
    pub depth: usize,
    pub source: RootedTree,
    /// Source vertices of the ball in breadth-first order.
    pub ball: Vec<usize>,
    /// `image[u]` for every source vertex `u` of the ball.
    pub image: Vec<usize>,
    pub certificates: ClauseCertificates,
}

/// Builds the map level by level: level 1 from a perimeter with parameter
/// `r + 1` at the target root, then each fibre `U` over `y` splits the
/// children of `y` into blocks `A_v` and maps the `r` children of each `v` to
/// a perimeter of the piece below `A_v`.
pub fn build_tree_map(target: &mut RootedTree, r: usize, depth: usize) -> Result<TreeMap> {
    if r < 3 {
        return Err(Error::Precondition(format!("r = {r} must be at least 3")));
    }
    let mut source = RootedTree::regular(r + 1);
    let ball = source.materialize(depth)?;
    let mut image = vec![usize::MAX; source.materialized()];
    let check = |t: &mut RootedTree, y: usize| -> Result<()> {
        let deg = t.degree(y)?;
        if !(3..=r).contains(&deg) {
            return Err(Error::DegreeWindow(format!("target vertex {} has degree {deg} outside [3, {r}]", t.label(y))));
        }
        Ok(())
    };
    check(target, 0)?;
    image[0] = 0;
    let mut level: Vec<usize> = vec![0];
    for n in 1..=depth {
        let mut next = Vec::new();
        if n == 1 {
            let kids = target.children(0)?;
            let p = decompose(target, 0, &kids, r + 1)?;
            let src = source.known_children(0).expect("materialized").to_vec();
            assign(&src, &p, &mut image);
            next.extend(src);
        } else {
            let mut fibres: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &u in &level {
                fibres.entry(image[u]).or_default().push(u);
            }
            for (y, fibre) in fibres {
                check(target, y)?;
                let ykids = target.children(y)?;
                let h = even_split(ykids.len(), fibre.len())?;
                let mut start = 0;
                for (&v, &hv) in fibre.iter().zip(&h) {
                    let block = &ykids[start..start + hv];
                    start += hv;
                    let p = if block.len() >= 2 {
                        decompose(target, y, block, r)?
                    } else {
                        let a = block[0];
                        check(target, a)?;
                        let akids = target.children(a)?;
                        decompose(target, a, &akids, r)?
                    };
                    for &(q, _) in &p.members {
                        check(target, q)?;
                    }
                    let src = source.known_children(v).expect("materialized").to_vec();
                    assign(&src, &p, &mut image);
                    next.extend(src);
                }
            }
        }
        level = next;
    }
    let mut map = TreeMap { r, depth, source, ball, image, certificates: ClauseCertificates::default() };
    map.certificates = certify(&map, target)?;
    Ok(map)
}

fn assign(src: &[usize], p: &Perimeter, image: &mut [usize]) {
    debug_assert_eq!(src.len(), p.total());
    let mut it = src.iter();
    for &(q, d) in &p.members {
        for _ in 0..d {
            image[*it.next().expect("multiplicities sum to the child count")] = q;
        }
    }
}

/// `total` split into `parts` positive shares, larger shares first.
fn even_split(total: usize, parts: usize) -> Result<Vec<usize>> {
    if parts == 0 || parts > total {
        return Err(Error::Internal(format!("cannot split {total} into {parts} positive shares")));
    }
    let (q, s) = (total / parts, total % parts);
    Ok((0..parts).map(|i| if i < s { q + 1 } else { q }).collect())
}

/// Recomputes clauses (i)-(viii) from the map alone. Clause (v) is read as:
/// if `F(u) ≼ F(v)` then some `w` with `F(w) = F(u)` satisfies `w ≼ v`.
pub fn certify(map: &TreeMap, target: &mut RootedTree) -> Result<ClauseCertificates> {
    let t = &map.source;
    let f = &map.image;
    let r = map.r;
    let mut c = [true; 8];
    c[0] = f[0] == 0;
    let mut fibres: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &u in &map.ball {
        fibres.entry(f[u]).or_default().push(u);
    }
    for fibre in fibres.values() {
        for (i, &u) in fibre.iter().enumerate() {
            for &v in &fibre[i + 1..] {
                if t.distance(u, v) > 2 || t.depth(u) != t.depth(v) {
                    c[1] = false;
                }
            }
        }
    }
    for &u in &map.ball[1..] {
        let p = t.parent(u).expect("non-root");
        if target.distance(f[u], f[p]) > r + 1 {
            c[2] = false;
        }
        if !target.precedes(f[p], f[u]) {
            c[3] = false;
        }
    }
    for &v in &map.ball {
        let mut ancestors_images = BTreeSet::new();
        let mut x = Some(v);
        while let Some(w) = x {
            ancestors_images.insert(f[w]);
            x = t.parent(w);
        }
        let mut y = Some(f[v]);
        while let Some(z) = y {
            if fibres.contains_key(&z) && !ancestors_images.contains(&z) {
                c[4] = false;
            }
            y = target.parent(z);
        }
    }
    for (&y, fibre) in &fibres {
        if fibre.len() + 1 > target.degree(y)? {
            c[5] = false;
        }
    }
    let mut levels: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &u in &map.ball {
        levels.entry(t.depth(u)).or_default().insert(f[u]);
    }
    let root_kids = target.children(0)?;
    for (&n, ys) in &levels {
        for &y in ys {
            let mut x = target.parent(y);
            while let Some(z) = x {
                if ys.contains(&z) {
                    c[6] = false;
                }
                x = target.parent(z);
            }
        }
        if n >= 1 {
            let members: Vec<(usize, usize)> = ys.iter().map(|&y| (y, 1)).collect();
            let chk = check_perimeter(target, 0, &root_kids, &members, None, None)?;
            if !(chk.antichain_ok && chk.covering_ok && chk.not_root_ok) {
                c[7] = false;
            }
        }
    }
    Ok(ClauseCertificates { clauses: c })
}

/// Worst constants seen while checking the quasi-isometry inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct QiReport {
    pub pairs: usize,
    pub case1_pairs: usize,
    pub case2_pairs: usize,
    /// Pairs with `ρ(F(u), F(v)) > (r + 1) d(u, v)`.
    pub upper_violations: usize,
    /// Pairs with `d(u, v) − (r + 2) > ρ(F(u), F(v))`.
    pub lower_violations: usize,
    /// Largest `ρ / d` over distinct pairs.
    pub worst_ratio: f64,
    /// Largest `d − ρ` over all pairs.
    pub worst_additive: i64,
    /// Target vertices checked for density and the largest distance found.
    pub density_checked: usize,
    pub density_radius: usize,
    pub density_violations: usize,
}

impl QiReport {
    pub fn ok(&self) -> bool {
        self.upper_violations == 0 && self.lower_violations == 0 && self.density_violations == 0
    }
}

/// Scans all pairs of the source ball and the density of the image over the
/// part of the target not strictly below the last level's image.
pub fn verify_quasi_isometry(map: &TreeMap, target: &mut RootedTree) -> Result<QiReport> {
    let t = &map.source;
    let f = &map.image;
    let r = map.r;
    let mut rep = QiReport {
        pairs: 0,
        case1_pairs: 0,
        case2_pairs: 0,
        upper_violations: 0,
        lower_violations: 0,
        worst_ratio: 0.0,
        worst_additive: i64::MIN,
        density_checked: 0,
        density_radius: 0,
        density_violations: 0,
    };
    for (i, &u) in map.ball.iter().enumerate() {
        for &v in &map.ball[i..] {
            let d = t.distance(u, v);
            let rho = target.distance(f[u], f[v]);
            let w = t.lca(u, v);
            if t.depth(u) - t.depth(w) <= 1 || t.depth(v) - t.depth(w) <= 1 {
                rep.case1_pairs += 1;
            } else {
                rep.case2_pairs += 1;
            }
            rep.pairs += 1;
            if rho > (r + 1) * d {
                rep.upper_violations += 1;
            }
            if d > rho + r + 2 {
                rep.lower_violations += 1;
            }
            if d > 0 {
                rep.worst_ratio = rep.worst_ratio.max(rho as f64 / d as f64);
            }
            rep.worst_additive = rep.worst_additive.max(d as i64 - rho as i64);
        }
    }
    // Region: target vertices with no strict ancestor in the last level's image.
    let last: BTreeSet<usize> = map.ball.iter().filter(|&&u| t.depth(u) == map.depth).map(|&u| f[u]).collect();
    let mut region = Vec::new();
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        region.push(x);
        if !last.contains(&x) {
            stack.extend(target.children(x)?);
        }
    }
    let sources: BTreeSet<usize> = map.ball.iter().map(|&u| f[u]).collect();
    let dist = tree_multi_source_bfs(target, &sources);
    for y in region {
        rep.density_checked += 1;
        let d = dist.get(&y).copied().unwrap_or(usize::MAX);
        rep.density_radius = rep.density_radius.max(d);
        if d > r + 1 {
            rep.density_violations += 1;
        }
    }
    Ok(rep)
}

/// Distances from a source set over the already materialised part of a tree.
fn tree_multi_source_bfs(tree: &RootedTree, sources: &BTreeSet<usize>) -> BTreeMap<usize, usize> {
    let mut dist: BTreeMap<usize, usize> = sources.iter().map(|&s| (s, 0)).collect();
    let mut q: VecDeque<usize> = sources.iter().copied().collect();
    while let Some(x) = q.pop_front() {
        let dx = dist[&x];
        let mut nbrs: Vec<usize> = tree.known_children(x).map(<[usize]>::to_vec).unwrap_or_default();
        nbrs.extend(tree.parent(x));
        for y in nbrs {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(dx + 1);
                q.push_back(y);
            }
        }
    }
    dist
}

/// Findings of [`tree_nonamenability_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    /// Connected subsets of size at most this were all checked.
    pub exhaustive_up_to: usize,
    pub subsets_checked: usize,
    pub sampled: usize,
    /// Smallest `|N₁(S)| / |S|` found, as `(|N₁(S)|, |S|)`.
    pub worst: (usize, usize),
    /// Subsets (as vertex lists) with `|N₁(S)| < 2|S|`.
    pub violations: Vec<Vec<usize>>,
}

impl ExpansionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|N₁(S)| ≥ 2|S|` on connected subsets of the vertices of depth less
/// than `depth` (whose neighbourhoods are fully known). Subsets up to size
/// 12 are enumerated while the count stays under `budget`; then `samples`
/// random connected subsets of size up to `sample_max` are drawn.
pub fn tree_nonamenability_check(
    tree: &mut RootedTree,
    depth: usize,
    budget: usize,
    samples: usize,
    sample_max: usize,
    seed: u64,
) -> Result<ExpansionReport> {
    let interior: Vec<usize> = tree.materialize(depth)?.into_iter().filter(|&v| tree.depth(v) < depth).collect();
    let inside: BTreeSet<usize> = interior.iter().copied().collect();
    let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &interior {
        let mut n: Vec<usize> = tree.children(v)?;
        n.extend(tree.parent(v));
        nbrs.insert(v, n);
    }
    let mut rep = ExpansionReport { exhaustive_up_to: 0, subsets_checked: 0, sampled: 0, worst: (usize::MAX, 1), violations: Vec::new() };
    let eval = |s: &[usize], rep: &mut ExpansionReport| {
        let mut n1: BTreeSet<usize> = s.iter().copied().collect();
        for v in s {
            n1.extend(nbrs[v].iter().copied());
        }
        rep.subsets_checked += 1;
        if n1.len() * rep.worst.1 < rep.worst.0 * s.len() {
            rep.worst = (n1.len(), s.len());
        }
        if n1.len() < 2 * s.len() {
            rep.violations.push(s.to_vec());
        }
    };
    // Connected subsets by size, each found once as an extension tree rooted
    // at its smallest vertex.
    let local: BTreeMap<usize, usize> = interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = interior
        .iter()
        .map(|v| nbrs[v].iter().filter_map(|w| local.get(w).copied()).collect())
        .collect();
    let mut sizes_done = 0;
    for size in 1..=12.min(interior.len()) {
        let mut batch: Vec<Vec<usize>> = Vec::new();
        let mut blocked = vec![0u32; interior.len()];
        for v in 0..interior.len() {
            let mut sub = vec![v];
            let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
            for &x in std::iter::once(&v).chain(adj[v].iter()) {
                blocked[x] += 1;
            }
            extend(&adj, v, size, &mut sub, ext, &mut blocked, &mut batch, budget);
            for &x in std::iter::once(&v).chain(adj[v].iter()) {
                blocked[x] -= 1;
            }
            if batch.len() > budget {
                break;
            }
        }
        if batch.len() > budget {
            break;
        }
        for s in &batch {
            let verts: Vec<usize> = s.iter().map(|&i| interior[i]).collect();
            eval(&verts, &mut rep);
        }
        sizes_done = size;
    }
    rep.exhaustive_up_to = sizes_done;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        if interior.is_empty() {
            break;
        }
        let target = rng.gen_range(1..=sample_max.max(1));
        let start = interior[rng.gen_range(0..interior.len())];
        let mut set = BTreeSet::from([start]);
        let mut frontier: Vec<usize> = nbrs[&start].iter().copied().filter(|x| inside.contains(x)).collect();
        while set.len() < target && !frontier.is_empty() {
            let y = frontier.swap_remove(rng.gen_range(0..frontier.len()));
            if set.insert(y) {
                frontier.extend(nbrs[&y].iter().copied().filter(|x| inside.contains(x) && !set.contains(x)));
            }
        }
        let s: Vec<usize> = set.into_iter().collect();
        eval(&s, &mut rep);
        rep.sampled += 1;
    }
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    adj: &[Vec<usize>],
    root: usize,
    size: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    blocked: &mut [u32],
    out: &mut Vec<Vec<usize>>,
    budget: usize,
) {
    if sub.len() == size {
        let mut s = sub.clone();
        s.sort_unstable();
        out.push(s);
        return;
    }
    while let Some(w) = ext.pop() {
        if out.len() > budget {
            return;
        }
        let mut next = ext.clone();
        next.extend(adj[w].iter().copied().filter(|&u| u > root && blocked[u] == 0));
        sub.push(w);
        for &x in std::iter::once(&w).chain(adj[w].iter()) {
            blocked[x] += 1;
        }
        extend(adj, root, size, sub, next, blocked, out, budget);
        for &x in std::iter::once(&w).chain(adj[w].iter()) {
            blocked[x] -= 1;
        }
        sub.pop();
    }
}

/// JSON form of a tree map: source and target labels per ball vertex.
pub fn tree_map_json(map: &TreeMap, target: &RootedTree) -> Value {
    json!({
        "r": map.r,
        "depth": map.depth,
        "pairs": map.ball.iter().map(|&u| json!([map.source.label(u), target.label(map.image[u])])).collect::<Vec<_>>(),
        "clauses": map.certificates.clauses,
    })
}
