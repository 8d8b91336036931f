//! Polytiles and polytilings on finite windows of a group.
//!
//! A window is a finite set of elements with a marked interior. Tilings are
//! checked for exactness on the interior only; translates may spill into the
//! collar around it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::cayley_ball_graph;
use crate::group::{enumerate_ball, Ball, Element, Family, Group, GroupSpec};
use crate::hamilton::{double_cover_walk, hamiltonian_from_walk, rotate_closed_walk};

/// A finite set of group elements with a marked interior.
#[derive(Debug, Clone)]
pub struct TileWindow {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    interior: Vec<bool>,
}

impl TileWindow {
    pub fn new(elements: Vec<Element>, interior: Vec<bool>) -> Result<TileWindow> {
        if elements.len() != interior.len() {
            return Err(Error::Precondition("interior mask length differs from window".into()));
        }
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::Precondition("window lists an element twice".into()));
        }
        Ok(TileWindow { elements, index, interior })
    }

    pub fn from_ball(ball: &Ball) -> TileWindow {
        let interior = (0..ball.len()).map(|i| ball.is_interior(i)).collect();
        TileWindow::new(ball.elements().to_vec(), interior).expect("ball elements are distinct")
    }

    /// Integers `lo..=hi` in ℤ; interior drops `margin` from each end.
    pub fn interval(group: &Group, lo: i64, hi: i64, margin: i64) -> Result<TileWindow> {
        let elements = (lo..=hi).map(|x| int_element(group, x)).collect::<Result<Vec<_>>>()?;
        let interior = (lo..=hi).map(|x| x >= lo + margin && x <= hi - margin).collect();
        TileWindow::new(elements, interior)
    }

    /// The box `[0, w) × [0, h)` in ℤ², element `(x, y)` at index `y * w + x`.
    pub fn grid(group: &Group, w: usize, h: usize, margin: usize) -> Result<TileWindow> {
        if group.spec().family != Family::FreeAbelian(2) {
            return Err(Error::Precondition("grid windows live in Z^2".into()));
        }
        let mut elements = Vec::with_capacity(w * h);
        let mut interior = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                elements.push(Element::Vector(vec![x as i64, y as i64]));
                interior.push(x >= margin && y >= margin && x + margin < w && y + margin < h);
            }
        }
        TileWindow::new(elements, interior)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.interior[i]
    }

    pub fn interior_len(&self) -> usize {
        self.interior.iter().filter(|&&b| b).count()
    }
}

/// `x` times the first standard generator.
pub fn int_element(group: &Group, x: i64) -> Result<Element> {
    let g = group
        .standard_generators()
        .first()
        .ok_or_else(|| Error::Precondition("group has no generators".into()))?;
    let step = if x < 0 { group.inverse(g) } else { g.clone() };
    let mut acc = group.identity();
    for _ in 0..x.unsigned_abs() {
        acc = group.multiply(&acc, &step);
    }
    Ok(acc)
}

fn is_integers(group: &Group) -> bool {
    matches!(group.spec().family, Family::FreeAbelian(1) | Family::Free(1))
}

/// An ordered tuple of finite sets, each containing the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytile {
    pub tiles: Vec<BTreeSet<Element>>,
}

impl Polytile {
    pub fn new(group: &Group, tiles: Vec<BTreeSet<Element>>) -> Result<Polytile> {
        if tiles.is_empty() {
            return Err(Error::Rejected("a polytile needs at least one tile".into()));
        }
        let e = group.identity();
        if let Some(i) = tiles.iter().position(|t| !t.contains(&e)) {
            return Err(Error::Rejected(format!("tile {i} does not contain the identity")));
        }
        Ok(Polytile { tiles })
    }

    /// Tiles as arrays of token strings, e.g. `[["", "a"], ["", "b"]]`.
    pub fn from_json(group: &Group, v: &Value) -> Result<Polytile> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("tiles must be an array of arrays".into()))?;
        let mut tiles = Vec::new();
        for t in arr {
            let words = t.as_array().ok_or_else(|| Error::Parse("each tile must be an array".into()))?;
            let mut set = BTreeSet::new();
            for w in words {
                let s = w.as_str().ok_or_else(|| Error::Parse("tile entries must be strings".into()))?;
                set.insert(group.parse(s)?);
            }
            tiles.push(set);
        }
        Polytile::new(group, tiles)
    }

    pub fn to_json(&self, group: &Group) -> Value {
        json!(self.tiles.iter().map(|t| render_set(group, t)).collect::<Vec<_>>())
    }

    pub fn is_fair(&self) -> bool {
        self.tiles.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

fn render_set(group: &Group, s: &BTreeSet<Element>) -> Vec<String> {
    s.iter().map(|e| group.render(e)).collect()
}

/// Center sets `Δᵢ` paired with the tiles `Tᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytiling {
    pub deltas: Vec<BTreeSet<Element>>,
    pub tiles: Polytile,
}

impl Polytiling {
    pub fn new(deltas: Vec<BTreeSet<Element>>, tiles: Polytile) -> Result<Polytiling> {
        if deltas.len() != tiles.tiles.len() {
            return Err(Error::Precondition(format!(
                "{} center sets for {} tiles",
                deltas.len(),
                tiles.tiles.len()
            )));
        }
        Ok(Polytiling { deltas, tiles })
    }

    pub fn k(&self) -> usize {
        self.tiles.tiles.len()
    }

    pub fn to_json(&self, group: &Group) -> Value {
        json!({
            "tiles": self.tiles.to_json(group),
            "deltas": self.deltas.iter().map(|d| render_set(group, d)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(group: &Group, v: &Value) -> Result<Polytiling> {
        let tiles = Polytile::from_json(group, &v["tiles"])?;
        let arr = v["deltas"].as_array().ok_or_else(|| Error::Parse("deltas must be an array".into()))?;
        let deltas = arr
            .iter()
            .map(|d| {
                d.as_array()
                    .ok_or_else(|| Error::Parse("each delta set must be an array".into()))?
                    .iter()
                    .map(|w| group.parse(w.as_str().ok_or_else(|| Error::Parse("delta entries must be strings".into()))?))
                    .collect::<Result<BTreeSet<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Polytiling::new(deltas, tiles)
    }

    /// Every placement `(i, δ)` in order.
    pub fn placements(&self) -> impl Iterator<Item = (usize, &Element)> {
        self.deltas.iter().enumerate().flat_map(|(i, d)| d.iter().map(move |x| (i, x)))
    }
}

pub fn is_fair(p: &Polytile) -> bool {
    p.is_fair()
}

/// Coverage counts of a polytiling over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageCert {
    pub counts: Vec<u32>,
    pub interior: usize,
    pub uncovered: Vec<usize>,
    pub doubly_covered: Vec<usize>,
    /// Collar elements hit more than once; not a failure.
    pub collar_overlaps: usize,
    /// Translate elements falling outside the window.
    pub outside: usize,
}

impl CoverageCert {
    pub fn exact(&self) -> bool {
        self.uncovered.is_empty() && self.doubly_covered.is_empty()
    }

    pub fn to_json(&self, group: &Group, window: &TileWindow) -> Value {
        let name = |i: &usize| group.render(&window.elements[*i]);
        json!({
            "exact": self.exact(),
            "interior": self.interior,
            "uncovered": self.uncovered.iter().map(name).collect::<Vec<_>>(),
            "doubly_covered": self.doubly_covered.iter().map(name).collect::<Vec<_>>(),
            "collar_overlaps": self.collar_overlaps,
            "outside": self.outside,
            "coverage": window.elements.iter().zip(&self.counts).map(|(e, c)| json!([group.render(e), c])).collect::<Vec<_>>(),
        })
    }
}

/// Counts how often each window element is covered by the translates `δTᵢ`.
pub fn verify_polytiling(group: &Group, p: &Polytiling, window: &TileWindow) -> CoverageCert {
    let mut counts = vec![0u32; window.len()];
    let mut outside = 0;
    for (i, d) in p.placements() {
        for t in &p.tiles.tiles[i] {
            match window.index_of(&group.multiply(d, t)) {
                Some(x) => counts[x] += 1,
                None => outside += 1,
            }
        }
    }
    let interior: Vec<usize> = (0..window.len()).filter(|&x| window.interior[x]).collect();
    CoverageCert {
        uncovered: interior.iter().copied().filter(|&x| counts[x] == 0).collect(),
        doubly_covered: interior.iter().copied().filter(|&x| counts[x] > 1).collect(),
        collar_overlaps: (0..window.len()).filter(|&x| !window.interior[x] && counts[x] > 1).count(),
        interior: interior.len(),
        counts,
        outside,
    }
}

/// Block label `(tile index, center)` of every window element covered by
/// the polytiling; the first placement wins on overlaps.
pub fn induced_partition(group: &Group, p: &Polytiling, window: &TileWindow) -> Vec<Option<(usize, Element)>> {
    let mut label = vec![None; window.len()];
    for (i, d) in p.placements() {
        for t in &p.tiles.tiles[i] {
            if let Some(x) = window.index_of(&group.multiply(d, t)) {
                label[x].get_or_insert_with(|| (i, d.clone()));
            }
        }
    }
    label
}

/// Interval monotilings `({0..n-1}; nℤ)` of ℤ restricted to the centers whose
/// translate meets `lo..=hi`. Each `n` must divide the next.
pub fn interval_monotilings_z(group: &Group, ns: &[u64], lo: i64, hi: i64) -> Result<Vec<Polytiling>> {
    if !is_integers(group) {
        return Err(Error::Precondition("interval monotilings live in Z".into()));
    }
    if let Some(w) = ns.windows(2).find(|w| w[0] == 0 || w[1] % w[0] != 0) {
        return Err(Error::Rejected(format!("{} does not divide {}; coherence would fail", w[0], w[1])));
    }
    if ns.contains(&0) {
        return Err(Error::Rejected("interval length must be positive".into()));
    }
    ns.iter()
        .map(|&n| {
            let n = n as i64;
            let tile = (0..n).map(|x| int_element(group, x)).collect::<Result<BTreeSet<_>>>()?;
            let first = lo.div_euclid(n) * n;
            let mut deltas = BTreeSet::new();
            let mut d = first;
            while d <= hi {
                if d + n > lo {
                    deltas.insert(int_element(group, d)?);
                }
                d += n;
            }
            Polytiling::new(vec![deltas], Polytile::new(group, vec![tile])?)
        })
        .collect()
}

/// Boustrophedon order on the `w × h` grid: even rows left to right, odd
/// rows right to left, ids `y * w + x`.
pub fn boustrophedon(w: usize, h: usize) -> Vec<usize> {
    (0..h)
        .flat_map(|y| {
            let row: Vec<usize> = (0..w).map(|x| y * w + x).collect();
            if y % 2 == 0 {
                row
            } else {
                row.into_iter().rev().collect()
            }
        })
        .collect()
}

/// The bijection `t ↦ order[origin + t]` from an integer range onto the
/// window, as a map between elements of `z` and the window's group.
pub fn path_bijection(z: &Group, window: &TileWindow, order: &[usize], origin: usize) -> Result<BTreeMap<Element, Element>> {
    if !is_integers(z) {
        return Err(Error::Precondition("path bijections start from Z".into()));
    }
    if origin >= order.len() {
        return Err(Error::Precondition("origin outside the order".into()));
    }
    let mut seen = vec![false; window.len()];
    let mut map = BTreeMap::new();
    for (i, &v) in order.iter().enumerate() {
        if v >= window.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotBijective(format!("order repeats or leaves the window at position {i}")));
        }
        map.insert(int_element(z, i as i64 - origin as i64)?, window.elements[v].clone());
    }
    Ok(map)
}

/// A pushed-forward polytiling with the bookkeeping of the construction.
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub tiling: Polytiling,
    /// Source centers whose translate leaves the domain of the bijection.
    pub dropped: Vec<Element>,
    /// Largest word length of an element of any shape class.
    pub shape_radius: usize,
    /// Size of the ball of radius `shape_radius`, when it could be enumerated.
    pub ball_bound: Option<usize>,
}

impl Pushforward {
    pub fn shape_classes_bounded(&self) -> bool {
        self.ball_bound.is_none_or(|b| self.tiling.k() <= b)
    }
}

/// Pushes a monotiling `(Δ; T)` of the source group forward through the
/// bijection `phi`: each center `δ` yields the shape `φ(δ)⁻¹ φ(δT)`, and
/// shapes are collected into classes with `φ(T)` first.
pub fn pushforward_polytiling(
    src: &Group,
    dst: &Group,
    phi: &BTreeMap<Element, Element>,
    mono: &Polytiling,
) -> Result<Pushforward> {
    if mono.k() != 1 {
        return Err(Error::Precondition("pushforward expects a monotiling".into()));
    }
    let image: BTreeSet<&Element> = phi.values().collect();
    if image.len() != phi.len() {
        return Err(Error::NotBijective("two source elements share an image".into()));
    }
    let e = src.identity();
    if !mono.deltas[0].contains(&e) {
        return Err(Error::Precondition("the identity must be a center of the source tiling".into()));
    }
    if phi.get(&e) != Some(&dst.identity()) {
        return Err(Error::Precondition("the bijection must send the identity to the identity".into()));
    }
    let tile = &mono.tiles.tiles[0];
    let mut kept: Vec<(Element, BTreeSet<Element>)> = Vec::new();
    let mut dropped = Vec::new();
    for d in &mono.deltas[0] {
        let imgs: Option<Vec<&Element>> = tile.iter().map(|t| phi.get(&src.multiply(d, t))).collect();
        match imgs {
            Some(imgs) => {
                let pd = &phi[d];
                let inv = dst.inverse(pd);
                let shape: BTreeSet<Element> = imgs.iter().map(|x| dst.multiply(&inv, x)).collect();
                kept.push((pd.clone(), shape));
            }
            None => dropped.push(d.clone()),
        }
    }
    // Classes in order of first occurrence along word order, identity first.
    kept.sort_by(|(a, _), (b, _)| {
        (!dst.is_identity(a), dst.standard_length(a), a).cmp(&(!dst.is_identity(b), dst.standard_length(b), b))
    });
    let mut class_of: BTreeMap<BTreeSet<Element>, usize> = BTreeMap::new();
    let mut tiles = Vec::new();
    let mut deltas: Vec<BTreeSet<Element>> = Vec::new();
    for (pd, shape) in kept {
        let next = tiles.len();
        let c = *class_of.entry(shape.clone()).or_insert(next);
        if c == next {
            tiles.push(shape);
            deltas.push(BTreeSet::new());
        }
        deltas[c].insert(pd);
    }
    let shape_radius = tiles.iter().flatten().map(|x| dst.standard_length(x)).max().unwrap_or(0);
    let ball_bound = dst
        .generating_set()
        .ok()
        .and_then(|s| enumerate_ball(dst, &s, shape_radius).ok())
        .map(|b| b.len());
    let tiling = Polytiling::new(deltas, Polytile::new(dst, tiles)?)?;
    Ok(Pushforward { tiling, dropped, shape_radius, ball_bound })
}

/// The three ccc properties at window scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CccReport {
    pub centered: bool,
    pub cofinal: bool,
    pub coherent: bool,
    /// Fraction of the interior inside the last `T₁`, as (inside, interior).
    pub last_first_tile_coverage: (usize, usize),
    pub witnesses: Vec<String>,
}

impl CccReport {
    pub fn all(&self) -> bool {
        self.centered && self.cofinal && self.coherent
    }

    pub fn to_json(&self) -> Value {
        json!({
            "centered": self.centered,
            "cofinal": self.cofinal,
            "coherent": self.coherent,
            "last_first_tile_coverage": [self.last_first_tile_coverage.0, self.last_first_tile_coverage.1],
            "witnesses": self.witnesses,
        })
    }
}

/// Centered: `1 ∈ Δ₁ⁿ`. Cofinal: `T₁ⁿ ⊆ T₁ⁿ⁺¹`. Coherent: every level-`n`
/// block, restricted to the interior, sits inside one level-`n+1` block.
pub fn ccc_check(group: &Group, seq: &[Polytiling], window: &TileWindow) -> CccReport {
    let mut witnesses = Vec::new();
    let e = group.identity();
    let mut centered = true;
    let mut cofinal = true;
    let mut coherent = true;
    for (n, p) in seq.iter().enumerate() {
        if !p.deltas.first().is_some_and(|d| d.contains(&e)) {
            centered = false;
            witnesses.push(format!("level {n}: identity is not a first-tile center"));
        }
    }
    for (n, w) in seq.windows(2).enumerate() {
        if let Some(x) = w[0].tiles.tiles[0].difference(&w[1].tiles.tiles[0]).next() {
            cofinal = false;
            witnesses.push(format!("level {n}: {} in T1 but not in the next T1", group.render(x)));
        }
    }
    let parts: Vec<_> = seq.iter().map(|p| induced_partition(group, p, window)).collect();
    for (n, w) in parts.windows(2).enumerate() {
        let mut image: BTreeMap<&(usize, Element), &(usize, Element)> = BTreeMap::new();
        for x in (0..window.len()).filter(|&x| window.interior[x]) {
            let (Some(a), Some(b)) = (&w[0][x], &w[1][x]) else {
                coherent = false;
                witnesses.push(format!("level {n}: {} is not covered", group.render(&window.elements[x])));
                continue;
            };
            if let Some(prev) = image.insert(a, b) {
                if prev != b {
                    coherent = false;
                    witnesses.push(format!(
                        "level {n}: block of {} splits across two blocks of the next level",
                        group.render(&window.elements[x])
                    ));
                }
            }
        }
    }
    let last = seq.last().map(|p| &p.tiles.tiles[0]);
    let interior: Vec<usize> = (0..window.len()).filter(|&x| window.interior[x]).collect();
    let inside = interior.iter().filter(|&&x| last.is_some_and(|t| t.contains(&window.elements[x]))).count();
    witnesses.dedup();
    CccReport { centered, cofinal, coherent, last_first_tile_coverage: (inside, interior.len()), witnesses }
}

/// Replaces every `Δᵢ` by `DΔᵢ`. `in_subgroup` decides membership in the
/// subgroup tiled by `p`; two representatives in one coset are rejected.
pub fn coset_extend<F: Fn(&Element) -> bool>(
    group: &Group,
    p: &Polytiling,
    reps: &[Element],
    in_subgroup: F,
) -> Result<Polytiling> {
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            if in_subgroup(&group.multiply(&group.inverse(a), b)) {
                return Err(Error::Rejected(format!(
                    "representatives {} and {} lie in the same coset",
                    group.render(a),
                    group.render(b)
                )));
            }
        }
    }
    let deltas = p
        .deltas
        .iter()
        .map(|d| reps.iter().flat_map(|r| d.iter().map(move |x| group.multiply(r, x))).collect())
        .collect();
    Polytiling::new(deltas, p.tiles.clone())
}

/// `F ⊆ ⋂ Tᵢ`.
pub fn super_poly_mt(p: &Polytile, f: &[Element]) -> bool {
    f.iter().all(|x| p.tiles.iter().all(|t| t.contains(x)))
}

/// For a sequence: the intersections `⋂ Tᵢⁿ` increase, and (window scale)
/// whether the last one contains the whole window interior.
pub fn super_poly_ccc(seq: &[Polytiling], window: &TileWindow) -> (bool, bool) {
    let cores: Vec<BTreeSet<Element>> = seq
        .iter()
        .map(|p| {
            let mut it = p.tiles.tiles.iter();
            let first = it.next().cloned().unwrap_or_default();
            it.fold(first, |acc, t| acc.intersection(t).cloned().collect())
        })
        .collect();
    let nested = cores.windows(2).all(|w| w[0].is_subset(&w[1]));
    let exhausts = cores
        .last()
        .is_some_and(|c| (0..window.len()).filter(|&x| window.interior[x]).all(|x| c.contains(&window.elements[x])));
    (nested, exhausts)
}

/// What the exact-cover search should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Find,
    Count { limit: u64 },
}

/// Placements considered by the search and what it found.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub placements: Vec<(usize, Element)>,
    pub solution: Option<Vec<usize>>,
    pub count: u64,
    /// The count hit its limit.
    pub truncated: bool,
}

impl SearchOutcome {
    pub fn tiling(&self, tiles: &Polytile) -> Option<Polytiling> {
        let sol = self.solution.as_ref()?;
        let mut deltas = vec![BTreeSet::new(); tiles.tiles.len()];
        for &r in sol {
            let (i, d) = &self.placements[r];
            deltas[*i].insert(d.clone());
        }
        Some(Polytiling { deltas, tiles: tiles.clone() })
    }
}

/// All placements `δTᵢ` lying inside the window and meeting its interior,
/// ordered by tile then by the window index of `δ`.
pub fn candidate_placements(group: &Group, window: &TileWindow, tiles: &Polytile) -> Vec<(usize, Element)> {
    let mut out = Vec::new();
    for (i, t) in tiles.tiles.iter().enumerate() {
        let mut centers: BTreeSet<usize> = BTreeSet::new();
        for x in (0..window.len()).filter(|&x| window.interior[x]) {
            for s in t {
                let d = group.multiply(&window.elements[x], &group.inverse(s));
                if let Some(di) = window.index_of(&d) {
                    if t.iter().all(|s| window.index_of(&group.multiply(&d, s)).is_some()) {
                        centers.insert(di);
                    }
                }
            }
        }
        out.extend(centers.into_iter().map(|di| (i, window.elements[di].clone())));
    }
    out
}

/// Exact cover of the window interior by translates of the tiles. Interior
/// elements must be covered once; collar elements at most once.
pub fn tile_search_exact_cover(group: &Group, window: &TileWindow, tiles: &Polytile, mode: SearchMode) -> Result<SearchOutcome> {
    let e = group.identity();
    if let Some(i) = tiles.tiles.iter().position(|t| !t.contains(&e)) {
        return Err(Error::Rejected(format!("tile {i} does not contain the identity")));
    }
    let placements = candidate_placements(group, window, tiles);
    search_placements(group, window, tiles, placements, mode)
}

/// The same search restricted to the placements of a given polytiling.
pub fn exact_cover_given(group: &Group, window: &TileWindow, p: &Polytiling, limit: u64) -> Result<SearchOutcome> {
    let placements = p
        .placements()
        .filter(|(i, d)| {
            let cells: Vec<Option<usize>> =
                p.tiles.tiles[*i].iter().map(|t| window.index_of(&group.multiply(d, t))).collect();
            cells.iter().all(Option::is_some) && cells.iter().flatten().any(|&x| window.interior[x])
        })
        .map(|(i, d)| (i, d.clone()))
        .collect();
    search_placements(group, window, &p.tiles, placements, SearchMode::Count { limit })
}

fn search_placements(
    group: &Group,
    window: &TileWindow,
    tiles: &Polytile,
    placements: Vec<(usize, Element)>,
    mode: SearchMode,
) -> Result<SearchOutcome> {
    // Interior columns first so they are the primary ones.
    let mut column = vec![usize::MAX; window.len()];
    let interior: Vec<usize> = (0..window.len()).filter(|&x| window.interior[x]).collect();
    let collar: Vec<usize> = (0..window.len()).filter(|&x| !window.interior[x]).collect();
    for (c, &x) in interior.iter().chain(&collar).enumerate() {
        column[x] = c;
    }
    let mut dlx = Dlx::new(interior.len(), collar.len());
    for (i, d) in &placements {
        let mut cols: Vec<usize> = tiles.tiles[*i]
            .iter()
            .map(|t| window.index_of(&group.multiply(d, t)).map(|x| column[x]))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("placement leaves the window".into()))?;
        cols.sort_unstable();
        dlx.add_row(&cols);
    }
    let limit = match mode {
        SearchMode::Find => 1,
        SearchMode::Count { limit } => limit,
    };
    let mut solution = None;
    let count = dlx.search(limit, &mut solution);
    if mode == SearchMode::Find && solution.is_none() {
        return Err(Error::NoTiling);
    }
    let truncated = matches!(mode, SearchMode::Count { .. }) && count >= limit;
    Ok(SearchOutcome { placements, solution, count, truncated })
}

/// Algorithm X on dancing links. Node 0 is the root, nodes `1..=ncols` are
/// column headers, rows follow. Secondary columns stay out of the header list.
struct Dlx {
    l: Vec<usize>,
    r: Vec<usize>,
    u: Vec<usize>,
    d: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    rows: usize,
}

impl Dlx {
    fn new(primary: usize, secondary: usize) -> Dlx {
        let n = primary + secondary + 1;
        let mut x = Dlx {
            l: (0..n).collect(),
            r: (0..n).collect(),
            u: (0..n).collect(),
            d: (0..n).collect(),
            col: (0..n).collect(),
            row: vec![usize::MAX; n],
            size: vec![0; n],
            rows: 0,
        };
        for c in 0..=primary {
            x.r[c] = if c == primary { 0 } else { c + 1 };
            x.l[c] = if c == 0 { primary } else { c - 1 };
        }
        x
    }

    fn add_row(&mut self, cols: &[usize]) {
        let first = self.l.len();
        for (k, &c) in cols.iter().enumerate() {
            let h = c + 1;
            let node = self.l.len();
            let up = self.u[h];
            self.u.push(up);
            self.d.push(h);
            self.d[up] = node;
            self.u[h] = node;
            self.col.push(h);
            self.row.push(self.rows);
            self.size[h] += 1;
            self.l.push(if k == 0 { node } else { node - 1 });
            self.r.push(first);
            if k > 0 {
                self.r[node - 1] = node;
            }
            self.l[first] = node;
        }
        self.rows += 1;
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.l[c], self.r[c]);
        self.r[l] = r;
        self.l[r] = l;
        let mut i = self.d[c];
        while i != c {
            let mut j = self.r[i];
            while j != i {
                let (u, d) = (self.u[j], self.d[j]);
                self.d[u] = d;
                self.u[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.r[j];
            }
            i = self.d[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.u[c];
        while i != c {
            let mut j = self.l[i];
            while j != i {
                let (u, d) = (self.u[j], self.d[j]);
                self.d[u] = j;
                self.u[d] = j;
                self.size[self.col[j]] += 1;
                j = self.l[j];
            }
            i = self.u[i];
        }
        let (l, r) = (self.l[c], self.r[c]);
        self.r[l] = c;
        self.l[r] = c;
    }

    fn search(&mut self, limit: u64, first: &mut Option<Vec<usize>>) -> u64 {
        let mut stack = Vec::new();
        let mut count = 0;
        self.recurse(limit, &mut stack, &mut count, first);
        count
    }

    fn recurse(&mut self, limit: u64, stack: &mut Vec<usize>, count: &mut u64, first: &mut Option<Vec<usize>>) {
        if self.r[0] == 0 {
            *count += 1;
            if first.is_none() {
                let mut rows: Vec<usize> = stack.iter().map(|&n| self.row[n]).collect();
                rows.sort_unstable();
                *first = Some(rows);
            }
            return;
        }
        let mut c = self.r[0];
        let mut best = c;
        while c != 0 {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.r[c];
        }
        if self.size[best] == 0 {
            return;
        }
        self.cover(best);
        let mut i = self.d[best];
        while i != best && *count < limit {
            stack.push(i);
            let mut j = self.r[i];
            while j != i {
                self.cover(self.col[j]);
                j = self.r[j];
            }
            self.recurse(limit, stack, count, first);
            let mut j = self.l[i];
            while j != i {
                self.uncover(self.col[j]);
                j = self.l[j];
            }
            stack.pop();
            i = self.d[i];
        }
        self.uncover(best);
    }
}

/// A fair polytiling with `F ⊆ T₁` and `|T₁| = n`, with its window check.
#[derive(Debug, Clone)]
pub struct SizedTiling {
    pub tiling: Polytiling,
    pub window: TileWindow,
    pub coverage: CoverageCert,
    /// Source centers dropped at the ends of the order.
    pub dropped: usize,
}

/// Builds a fair polytile with `F ⊆ T₁` and `|T₁| = n`.
///
/// Finite groups only admit sizes dividing the order. For ℤ the tile is an
/// interval when `F ∪ {0}` fits in one, and otherwise comes from the
/// perturbed natural order; for ℤ² a boustrophedon order on a `2r × 2r` box is used, and
/// for other infinite groups the Hamiltonian order of the radius-`r` ball.
/// The order is perturbed so that the identity is followed by the rest of
/// `F`, then pushed forward from the intervals of length `n`.
pub fn sized_fair_polytile(group: &Group, f: &[Element], n: usize, radius: usize) -> Result<SizedTiling> {
    if n == 0 {
        return Err(Error::Rejected("tile size must be positive".into()));
    }
    if let Some(order) = group.spec().order() {
        return sized_finite(group, f, n, order);
    }
    let mut need: BTreeSet<Element> = f.iter().cloned().collect();
    need.insert(group.identity());
    if n < need.len() {
        return Err(Error::Rejected(format!("size {n} is below {} = |F ∪ {{1}}|", need.len())));
    }
    let ints = is_integers(group);
    if ints {
        if let Some(t) = sized_integers(group, &need, n, radius)? {
            return Ok(t);
        }
    }
    let (window, order) = if ints {
        // F is too spread out for an interval tile: perturb the natural order.
        let reach = need.iter().map(|x| group.standard_length(x)).max().unwrap_or(0);
        let r = (radius.max(n) + reach + n) as i64;
        let window = TileWindow::interval(group, -r, r, n as i64)?;
        let order = (0..window.len()).collect();
        (window, order)
    } else if group.spec().family == Family::FreeAbelian(2) {
        let side = 2 * radius.max(2);
        let shift = Element::Vector(vec![radius as i64, radius as i64]);
        // Partial tiles at either end of the order stay inside the collar rows.
        let margin = 1.max((n - 1).div_ceil(side));
        let boxed = TileWindow::grid(group, side, side, margin)?;
        let inv = group.inverse(&shift);
        let elements: Vec<Element> = boxed.elements.iter().map(|x| group.multiply(x, &inv)).collect();
        let window = TileWindow::new(elements, boxed.interior.clone())?;
        (window, boustrophedon(side, side))
    } else {
        let s = group.generating_set()?;
        let cw = cayley_ball_graph(group, &s, radius, 1)?;
        let far = cw.graph.n() - 1;
        let walk = double_cover_walk(&cw.graph)?;
        let walk = rotate_closed_walk(&walk, far).ok_or_else(|| Error::Internal("walk misses a vertex".into()))?;
        let ham = hamiltonian_from_walk(&cw.graph, walk)?;
        (TileWindow::from_ball(&cw.ball), ham.order.vertices)
    };
    let mut ids = Vec::new();
    for x in &need {
        ids.push(window.index_of(x).ok_or_else(|| {
            Error::Precondition(format!("{} lies outside the window; increase the radius", group.render(x)))
        })?);
    }
    let e_id = window.index_of(&group.identity()).expect("identity in window");
    let moved: BTreeSet<usize> = ids.iter().copied().filter(|&i| i != e_id).collect();
    let mut front: Vec<usize> = order.iter().copied().filter(|i| moved.contains(i)).collect();
    front.insert(0, e_id);
    let mut perturbed = Vec::with_capacity(order.len());
    for &v in &order {
        if v == e_id {
            perturbed.extend_from_slice(&front);
        } else if !moved.contains(&v) {
            perturbed.push(v);
        }
    }
    let origin = perturbed.iter().position(|&v| v == e_id).expect("identity placed");
    let z = Group::new(&GroupSpec::free_abelian(1))?;
    let phi = path_bijection(&z, &window, &perturbed, origin)?;
    let lo = -(origin as i64);
    let hi = (perturbed.len() - origin) as i64 - 1;
    let mono = interval_monotilings_z(&z, &[n as u64], lo, hi)?.remove(0);
    let push = pushforward_polytiling(&z, group, &phi, &mono)?;
    let coverage = verify_polytiling(group, &push.tiling, &window);
    Ok(SizedTiling { tiling: push.tiling, window, coverage, dropped: push.dropped.len() })
}

/// Interval tile through `F ∪ {0}`, or `None` when the hull is longer than `n`.
fn sized_integers(group: &Group, need: &BTreeSet<Element>, n: usize, radius: usize) -> Result<Option<SizedTiling>> {
    let coords: Vec<i64> = need.iter().map(|x| integer_of(group, x)).collect();
    let (lo, hi) = (*coords.iter().min().unwrap(), *coords.iter().max().unwrap());
    if ((hi - lo) as usize) + 1 > n {
        return Ok(None);
    }
    let tile = (lo..lo + n as i64).map(|x| int_element(group, x)).collect::<Result<BTreeSet<_>>>()?;
    let r = radius.max(n) as i64;
    let margin = n as i64;
    let window = TileWindow::interval(group, -r - margin, r + margin, margin)?;
    let mut deltas = BTreeSet::new();
    let step = n as i64;
    let mut d = (-r - margin - lo).div_euclid(step) * step;
    while d + lo <= r + margin {
        deltas.insert(int_element(group, d)?);
        d += step;
    }
    let tiling = Polytiling::new(vec![deltas], Polytile::new(group, vec![tile])?)?;
    let coverage = verify_polytiling(group, &tiling, &window);
    Ok(Some(SizedTiling { tiling, window, coverage, dropped: 0 }))
}

fn integer_of(group: &Group, x: &Element) -> i64 {
    let len = group.standard_length(x) as i64;
    if group.word(x).first().is_some_and(|t| t.inverse) {
        -len
    } else {
        len
    }
}

fn sized_finite(group: &Group, f: &[Element], n: usize, order: u128) -> Result<SizedTiling> {
    if !order.is_multiple_of(n as u128) {
        return Err(Error::Rejected(format!(
            "size {n} does not divide the group order {order}; tiles of a finite group have size dividing its order"
        )));
    }
    let s = group.generating_set()?;
    let ball = enumerate_ball(group, &s, order as usize)?;
    let window = TileWindow::new(ball.elements().to_vec(), vec![true; ball.len()])?;
    let e = group.identity();
    let tiling = if let Family::FiniteCyclic(q) = group.spec().family {
        // a cyclic interval of length n containing F and 0
        let q = q as usize;
        let mut pts: Vec<usize> = f.iter().map(residue).chain([0]).collect();
        pts.sort_unstable();
        pts.dedup();
        let start = (0..q)
            .find(|&s| pts.iter().all(|&p| (p + q - s) % q < n))
            .ok_or_else(|| Error::Rejected(format!("no interval of length {n} contains F and 0")))?;
        let tile = (0..n).map(|i| Element::Residue(((start + i) % q) as u32)).collect();
        let deltas = (0..q / n).map(|j| Element::Residue((j * n) as u32)).collect();
        Polytiling::new(vec![deltas], Polytile::new(group, vec![tile])?)?
    } else if n as u128 == order {
        Polytiling::new(vec![BTreeSet::from([e.clone()])], Polytile::new(group, vec![window.elements.iter().cloned().collect()])?)?
    } else if n == 1 && f.iter().all(|x| group.is_identity(x)) {
        Polytiling::new(vec![window.elements.iter().cloned().collect()], Polytile::new(group, vec![BTreeSet::from([e.clone()])])?)?
    } else {
        return Err(Error::Unsupported(format!("sized tiles of size {n} for this finite family")));
    };
    if !f.iter().all(|x| tiling.tiles.tiles[0].contains(x)) {
        return Err(Error::Rejected("F is not contained in the first tile".into()));
    }
    let coverage = verify_polytiling(group, &tiling, &window);
    Ok(SizedTiling { tiling, window, coverage, dropped: 0 })
}

fn residue(x: &Element) -> usize {
    match x {
        Element::Residue(r) => *r as usize,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn z() -> Group {
        Group::new(&GroupSpec::free_abelian(1)).unwrap()
    }

    fn ints(g: &Group, xs: &[i64]) -> BTreeSet<Element> {
        xs.iter().map(|&x| int_element(g, x).unwrap()).collect()
    }

    #[test]
    fn parity_tiling_is_exact() {
        let g = z();
        let w = TileWindow::interval(&g, -8, 8, 1).unwrap();
        let evens: Vec<i64> = (-4..=4).map(|k| 2 * k).collect();
        let p = Polytiling::new(vec![ints(&g, &evens)], Polytile::new(&g, vec![ints(&g, &[0, 1])]).unwrap()).unwrap();
        assert!(verify_polytiling(&g, &p, &w).exact());
        let all: Vec<i64> = (-8..=8).collect();
        let bad = Polytiling::new(vec![ints(&g, &all)], p.tiles.clone()).unwrap();
        let cert = verify_polytiling(&g, &bad, &w);
        assert_eq!(cert.doubly_covered.len(), w.interior_len());
    }

    #[test]
    fn singleton_monotile() {
        let g = z();
        let w = TileWindow::interval(&g, -3, 3, 0).unwrap();
        let p = Polytiling::new(vec![ints(&g, &[-3, -2, -1, 0, 1, 2, 3])], Polytile::new(&g, vec![ints(&g, &[0])]).unwrap())
            .unwrap();
        assert!(verify_polytiling(&g, &p, &w).exact());
    }

    #[test]
    fn fairness() {
        let g = z();
        assert!(Polytile::new(&g, vec![ints(&g, &[0, 1]), ints(&g, &[0, 2])]).unwrap().is_fair());
        assert!(!Polytile::new(&g, vec![ints(&g, &[0]), ints(&g, &[0, 1])]).unwrap().is_fair());
        assert!(Polytile::new(&g, vec![ints(&g, &[0, 5, 9])]).unwrap().is_fair());
        assert!(Polytile::new(&g, vec![ints(&g, &[1, 2])]).is_err());
    }

    #[test]
    fn interval_sequences() {
        let g = z();
        let w = TileWindow::interval(&g, -16, 16, 0).unwrap();
        let seq = interval_monotilings_z(&g, &[1, 2, 4], -16, 16).unwrap();
        for p in &seq {
            assert!(verify_polytiling(&g, p, &w).exact());
        }
        assert!(ccc_check(&g, &seq, &w).all());
        let w6 = TileWindow::interval(&g, -12, 11, 0).unwrap();
        let seq = interval_monotilings_z(&g, &[2, 6], -12, 11).unwrap();
        assert!(ccc_check(&g, &seq, &w6).coherent);
        assert!(matches!(interval_monotilings_z(&g, &[2, 3], 0, 10), Err(Error::Rejected(_))));
    }

    #[test]
    fn cofinality_witness() {
        let g = z();
        let w = TileWindow::interval(&g, -8, 8, 0).unwrap();
        let mut seq = interval_monotilings_z(&g, &[2, 4], -8, 8).unwrap();
        // shift the second first-tile away from the first
        let shifted = ints(&g, &[0, -1, -2, -3]);
        seq[1].tiles.tiles[0] = shifted;
        let rep = ccc_check(&g, &seq, &w);
        assert!(!rep.cofinal);
        assert!(rep.witnesses.iter().any(|s| s.contains("T1")));
    }

    #[test]
    fn identity_pushforward() {
        let g = z();
        let w = TileWindow::interval(&g, -10, 9, 0).unwrap();
        let order: Vec<usize> = (0..w.len()).collect();
        let phi = path_bijection(&g, &w, &order, 10).unwrap();
        let mono = interval_monotilings_z(&g, &[2], -10, 9).unwrap().remove(0);
        let push = pushforward_polytiling(&g, &g, &phi, &mono).unwrap();
        assert_eq!(push.tiling, mono);
        assert!(push.dropped.is_empty());
    }

    #[test]
    fn boustrophedon_pushforward_on_six_by_six() {
        let z = z();
        let g = Group::new(&GroupSpec::free_abelian(2)).unwrap();
        let w = TileWindow::grid(&g, 6, 6, 1).unwrap();
        let order = boustrophedon(6, 6);
        let phi = path_bijection(&z, &w, &order, 0).unwrap();
        let mono = interval_monotilings_z(&z, &[2], 0, 35).unwrap().remove(0);
        let push = pushforward_polytiling(&z, &g, &phi, &mono).unwrap();
        assert!(push.tiling.tiles.is_fair());
        assert!(push.tiling.tiles.tiles.iter().all(|t| t.len() == 2));
        // consecutive pairs step right, left, or up
        let shapes: BTreeSet<String> = push.tiling.tiles.tiles.iter().map(|t| g.render(t.iter().find(|x| !g.is_identity(x)).unwrap())).collect();
        assert_eq!(shapes, BTreeSet::from(["A".to_string(), "a".to_string()]));
        assert!(verify_polytiling(&g, &push.tiling, &w).exact());
        assert!(push.shape_classes_bounded());
    }

    #[test]
    fn coset_extension() {
        let g = Group::new(&GroupSpec::free_abelian(2)).unwrap();
        let v = |x: i64, y: i64| Element::Vector(vec![x, y]);
        let tile = BTreeSet::from([v(0, 0), v(1, 0)]);
        let deltas: BTreeSet<Element> = (-3..=3).map(|k| v(2 * k, 0)).collect();
        let p = Polytiling::new(vec![deltas], Polytile::new(&g, vec![tile]).unwrap()).unwrap();
        let reps: Vec<Element> = (-3..=3).map(|y| v(0, y)).collect();
        let row = |e: &Element| matches!(e, Element::Vector(c) if c[1] == 0);
        let ext = coset_extend(&g, &p, &reps, row).unwrap();
        let elems: Vec<Element> = (-3..=3).flat_map(|y| (-6..=7).map(move |x| v(x, y))).collect();
        let interior = elems.iter().map(|e| matches!(e, Element::Vector(c) if c[0].abs() <= 5)).collect();
        let w = TileWindow::new(elems, interior).unwrap();
        assert!(verify_polytiling(&g, &ext, &w).exact());
        assert_eq!(coset_extend(&g, &p, &[g.identity()], row).unwrap(), p);
        assert!(coset_extend(&g, &p, &[v(0, 0), v(3, 0)], row).is_err());
    }

    #[test]
    fn sized_tiles_on_integers() {
        let g = z();
        let f = vec![int_element(&g, 0).unwrap(), int_element(&g, 3).unwrap()];
        let s = sized_fair_polytile(&g, &f, 4, 10).unwrap();
        assert_eq!(s.tiling.tiles.tiles[0], ints(&g, &[0, 1, 2, 3]));
        assert!(s.tiling.deltas[0].iter().all(|d| integer_of(&g, d) % 4 == 0));
        assert!(s.coverage.exact());
        let spread = sized_fair_polytile(&g, &f, 3, 10).unwrap();
        assert!(f.iter().all(|x| spread.tiling.tiles.tiles[0].contains(x)));
        assert_eq!(spread.tiling.tiles.tiles[0].len(), 3);
        assert!(spread.coverage.exact() && spread.tiling.tiles.is_fair());
        assert!(matches!(sized_fair_polytile(&g, &f, 1, 10), Err(Error::Rejected(_))));
    }

    #[test]
    fn sized_tiles_on_finite_cyclic() {
        let g = Group::new(&GroupSpec::cyclic(12)).unwrap();
        for n in 1..=12 {
            let r = sized_fair_polytile(&g, &[], n, 0);
            if 12 % n == 0 {
                assert!(r.unwrap().coverage.exact(), "n={n}");
            } else {
                assert!(matches!(r, Err(Error::Rejected(_))), "n={n}");
            }
        }
    }

    #[test]
    fn sized_tiles_on_z2() {
        let g = Group::new(&GroupSpec::free_abelian(2)).unwrap();
        let f = vec![g.identity(), Element::Vector(vec![1, 1])];
        for n in 2..=8 {
            let s = sized_fair_polytile(&g, &f, n, 6).unwrap();
            let t1 = &s.tiling.tiles.tiles[0];
            assert_eq!(t1.len(), n);
            assert!(f.iter().all(|x| t1.contains(x)));
            assert!(s.tiling.tiles.is_fair());
            assert!(s.coverage.exact(), "n={n}: {:?}", s.coverage.uncovered);
        }
    }

    fn naive_count(g: &Group, w: &TileWindow, p: &Polytile) -> u64 {
        let placements = candidate_placements(g, w, p);
        let cells: Vec<Vec<usize>> = placements
            .iter()
            .map(|(i, d)| p.tiles[*i].iter().map(|t| w.index_of(&g.multiply(d, t)).unwrap()).collect())
            .collect();
        fn go(w: &TileWindow, cells: &[Vec<usize>], used: &mut Vec<bool>) -> u64 {
            let Some(x) = (0..w.len()).find(|&x| w.is_interior(x) && !used[x]) else { return 1 };
            let mut total = 0;
            for c in cells.iter().filter(|c| c.contains(&x)) {
                if c.iter().all(|&y| !used[y]) {
                    c.iter().for_each(|&y| used[y] = true);
                    total += go(w, cells, used);
                    c.iter().for_each(|&y| used[y] = false);
                }
            }
            total
        }
        go(w, &cells, &mut vec![false; w.len()])
    }

    #[test]
    fn exact_cover_on_integers() {
        let g = z();
        let w = TileWindow::interval(&g, -8, 8, 1).unwrap();
        let p = Polytile::new(&g, vec![ints(&g, &[0, 1])]).unwrap();
        let out = tile_search_exact_cover(&g, &w, &p, SearchMode::Count { limit: 100 }).unwrap();
        assert_eq!(out.count, 2);
        assert_eq!(naive_count(&g, &w, &p), 2);
        let bad = Polytile { tiles: vec![ints(&g, &[1, 2])] };
        assert!(tile_search_exact_cover(&g, &w, &bad, SearchMode::Find).is_err());
    }

    #[test]
    fn star_tiles_free_group_window() {
        let g = Group::new(&GroupSpec::free(2)).unwrap();
        let s = g.generating_set().unwrap();
        let ball = enumerate_ball(&g, &s, 4).unwrap().with_margin(2);
        let w = TileWindow::from_ball(&ball);
        let star: BTreeSet<Element> = ["", "a", "A", "b", "B"].iter().map(|x| g.parse(x).unwrap()).collect();
        let p = Polytile::new(&g, vec![star]).unwrap();
        let out = tile_search_exact_cover(&g, &w, &p, SearchMode::Find).unwrap();
        let tiling = out.tiling(&p).unwrap();
        assert!(verify_polytiling(&g, &tiling, &w).exact());
        let small = TileWindow::from_ball(&enumerate_ball(&g, &s, 3).unwrap().with_margin(2));
        let dlx = tile_search_exact_cover(&g, &small, &p, SearchMode::Count { limit: u64::MAX }).unwrap();
        assert_eq!(dlx.count, naive_count(&g, &small, &p));
        assert!(dlx.count > 0);
    }

    #[test]
    fn given_placements_agree_with_verifier() {
        let g = z();
        let w = TileWindow::interval(&g, -8, 8, 1).unwrap();
        let seq = interval_monotilings_z(&g, &[2], -8, 8).unwrap();
        let out = exact_cover_given(&g, &w, &seq[0], 2).unwrap();
        assert_eq!(out.count, 1);
        assert_eq!(out.solution.unwrap().len(), out.placements.len());
    }

    #[test]
    fn super_predicates() {
        let g = z();
        let p = Polytile::new(&g, vec![ints(&g, &[0, 1]), ints(&g, &[0, 2])]).unwrap();
        assert!(super_poly_mt(&p, &[int_element(&g, 0).unwrap()]));
        assert!(!super_poly_mt(&p, &[int_element(&g, 1).unwrap()]));
        let w = TileWindow::interval(&g, 0, 3, 0).unwrap();
        let seq = interval_monotilings_z(&g, &[2, 4], 0, 3).unwrap();
        assert_eq!(super_poly_ccc(&seq, &w), (true, true));
    }
}
