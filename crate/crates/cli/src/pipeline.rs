use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use caykit::graph::{cayley_ball_graph, CayleyWindow, Multigraph};
use caykit::group::{Family, Group, GroupSpec, DEFAULT_BALL_CAP};
use caykit::hamilton::{
    check_hall_condition, double_cover_walk, hamiltonian_from_walk, hamiltonian_in_power, rotate_closed_walk,
    verify_translation_like, PathAction,
};
use caykit::spanning::{
    bfs_spanning_tree, block_bfs_trees, free_subgroup_generators, lift_spanning_tree, orbit_partition, orbit_quotient,
    regular_spanning_tree, z_z3_no_regular_tree_check,
};
use caykit::tiling::{
    boustrophedon, ccc_check, exact_cover_given, interval_monotilings_z, path_bijection, pushforward_polytiling,
    verify_polytiling, Polytiling, TileWindow,
};
use caykit::trees::{build_tree_map, certify, tree_map_json, verify_quasi_isometry, RootedTree};

use crate::parse_group;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Burnside,
    Vonneumann,
    Tiling,
    Treemap,
    Zz3,
}

impl Pipeline {
    pub const ALL: [Pipeline; 5] =
        [Pipeline::Burnside, Pipeline::Vonneumann, Pipeline::Tiling, Pipeline::Treemap, Pipeline::Zz3];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Burnside => "burnside",
            Pipeline::Vonneumann => "vonneumann",
            Pipeline::Tiling => "tiling",
            Pipeline::Treemap => "treemap",
            Pipeline::Zz3 => "zz3",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Pipeline> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .with_context(|| format!("unknown pipeline {s:?}; expected one of burnside, vonneumann, tiling, treemap, zz3"))
    }
}

/// Everything a pipeline reads. Unset fields take per-pipeline defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Group shorthand, inline JSON spec, or path to a spec file.
    pub group: String,
    pub radius: usize,
    /// Target degree for regular spanning trees.
    pub k: usize,
    /// Perimeter parameter of the tree map.
    pub r: usize,
    pub depth: usize,
    /// Target tree rule for the tree map; `null` means seeded degrees in `[3, r]`.
    pub target: Value,
    /// Interval lengths for the tiling pipeline, each dividing the next.
    pub ns: Vec<u64>,
    /// Side of the ℤ² box used by the tiling pipeline.
    pub grid: usize,
    pub ball_cap: usize,
    /// Number of sampled block subsets in the Hall check.
    pub samples: usize,
    pub seed: u64,
    pub emit_dot: bool,
}

impl RunConfig {
    pub fn for_pipeline(p: Pipeline) -> RunConfig {
        let base = RunConfig {
            group: "Z^2".into(),
            radius: 6,
            k: 3,
            r: 5,
            depth: 5,
            target: Value::Null,
            ns: vec![2, 4, 8],
            grid: 12,
            ball_cap: DEFAULT_BALL_CAP,
            samples: 200,
            seed: 1,
            emit_dot: false,
        };
        match p {
            Pipeline::Burnside | Pipeline::Tiling | Pipeline::Treemap => base,
            Pipeline::Vonneumann => RunConfig { group: "F2".into(), ..base },
            Pipeline::Zz3 => RunConfig { group: "ZZ3".into(), radius: 2, ..base },
        }
    }

    /// Overlays the keys present in a JSON object onto the defaults.
    pub fn from_json_over(p: Pipeline, v: &Value) -> Result<RunConfig> {
        let mut merged = serde_json::to_value(RunConfig::for_pipeline(p))?;
        let obj = v.as_object().context("config must be a JSON object")?;
        for (key, val) in obj {
            merged[key] = val.clone();
        }
        let cfg: RunConfig = serde_json::from_value(merged).context("invalid config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ball_cap == 0 {
            bail!("ball_cap must be positive");
        }
        if self.radius == 0 {
            bail!("radius must be positive");
        }
        if self.ns.is_empty() || self.ns.contains(&0) {
            bail!("ns must be a non-empty list of positive lengths");
        }
        Ok(())
    }

    fn group(&self) -> Result<(GroupSpec, Group)> {
        let spec = parse_group(&self.group)?;
        let mut g = Group::new(&spec)?;
        g.set_ball_cap(self.ball_cap);
        Ok((spec, g))
    }
}

/// The outputs of a run: a JSON certificate and an optional DOT drawing.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub pipeline: Pipeline,
    pub json: Value,
    pub dot: Option<String>,
    pub ok: bool,
}

impl Artifact {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"
    }
}

/// Runs one pipeline; `ok` is true iff every embedded check passed.
pub fn run_pipeline(p: Pipeline, cfg: &RunConfig) -> Result<Artifact> {
    cfg.validate()?;
    let (body, dot) = match p {
        Pipeline::Burnside => burnside(cfg)?,
        Pipeline::Vonneumann => vonneumann(cfg)?,
        Pipeline::Tiling => tiling(cfg)?,
        Pipeline::Treemap => treemap(cfg)?,
        Pipeline::Zz3 => zz3(cfg)?,
    };
    let ok = body["ok"].as_bool().unwrap_or(false);
    let mut json = json!({
        "schema": SCHEMA_VERSION,
        "pipeline": p.name(),
        "seed": cfg.seed,
        "config": serde_json::to_value(cfg)?,
    });
    for (k, v) in body.as_object().expect("pipeline bodies are objects") {
        json[k] = v.clone();
    }
    Ok(Artifact { pipeline: p, json, dot: dot.filter(|_| cfg.emit_dot), ok })
}

fn window(cfg: &RunConfig, g: &Group, margin: usize) -> Result<CayleyWindow> {
    let s = g.generating_set()?;
    Ok(cayley_ball_graph(g, &s, cfg.radius, margin.min(cfg.radius))?)
}

fn burnside(cfg: &RunConfig) -> Result<(Value, Option<String>)> {
    let (spec, g) = cfg.group()?;
    let w = window(cfg, &g, 1)?;
    let ham = hamiltonian_in_power(&w.graph)?;
    let order = &ham.order.vertices;
    let mut seen = vec![0usize; w.graph.n()];
    for &v in order {
        seen[v] += 1;
    }
    let visits_once = seen.iter().all(|&c| c == 1);
    let max_step = order.windows(2).map(|p| w.graph.bfs(p[0])[p[1]]).max().unwrap_or(0);
    let hall = check_hall_condition(&ham.walk.vertices, ham.selection.m, 12, cfg.samples, cfg.seed);
    let table = PathAction::new(&ham.order, w.graph.n())?.to_table();
    let action = verify_translation_like(&table, &w.graph, 3)?;
    let ok = visits_once
        && max_step <= ham.power_k
        && hall.violations.is_empty()
        && hall.edge_bound_violations.is_empty()
        && action.is_free();
    let body = json!({
        "group": spec.to_json(),
        "radius": cfg.radius,
        "vertices": w.graph.n(),
        "max_degree": ham.d,
        "step_bound": ham.power_k,
        "max_step": max_step,
        "visits_each_once": visits_once,
        "walk_length": ham.walk.vertices.len(),
        "order": order.iter().map(|&v| w.graph.label(v)).collect::<Vec<_>>(),
        "hall": {
            "block_length": ham.selection.m,
            "subsets_checked": hall.subsets_checked,
            "exhaustive": hall.exhaustive,
            "violations": hall.violations.len(),
            "edge_bound_violations": hall.edge_bound_violations.len(),
        },
        "action": {
            "free": action.is_free(),
            "lipschitz_c": action.lipschitz_c,
            "undefined_points": action.undefined_points,
        },
        "ok": ok,
    });
    let mut dot = w.graph.to_dot("window");
    let path: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    let tail = dot.rfind('}').expect("dot output is closed");
    dot.insert_str(tail, &format!("  edge [color=red, penwidth=2, constraint=false];\n  {};\n", path.join(" -- ")));
    Ok((body, Some(dot)))
}

fn vonneumann(cfg: &RunConfig) -> Result<(Value, Option<String>)> {
    let (spec, g) = cfg.group()?;
    if spec.declared_amenable {
        bail!("the group is declared amenable; degree-{} spanning trees need a non-amenable group", cfg.k);
    }
    let h = free_subgroup_generators(&g).context("no free subgroup available for the orbit partition")?;
    let margin = h.iter().map(|x| g.standard_length(x)).max().unwrap_or(1);
    let w = window(cfg, &g, margin)?;
    let parts = orbit_partition(&g, &w, &h)?;
    let quotient = orbit_quotient(&w.graph, &parts);
    let qtree = bfs_spanning_tree(&quotient, 0)?;
    let block_trees = block_bfs_trees(&parts)?;
    let lift = lift_spanning_tree(&w.graph, &parts, &block_trees, &qtree)?;
    let lift_check = lift.check();
    let s = g.generating_set()?;
    let reg = regular_spanning_tree(&g, &s, &w, &lift, cfg.k, margin)?;
    let tree_check = reg.tree.check();
    // Lifted edges live in the window plus the orbit edges.
    let host = Multigraph::simple(
        w.graph.n(),
        w.graph.edges().iter().map(|&(u, v, _)| (u, v)).chain(parts.block_edges.iter().flatten().copied()),
    );
    let ok = lift_check.all() && lift.inside(&host) && reg.ok();
    let labels = w.graph.labels();
    let body = json!({
        "group": spec.to_json(),
        "radius": cfg.radius,
        "vertices": w.graph.n(),
        "free_subgroup": h.iter().map(|x| g.render(x)).collect::<Vec<_>>(),
        "blocks": parts.blocks.len(),
        "quotient_edges": quotient.edge_count(),
        "lift": {
            "edges": lift.edges.len(),
            "edge_count_ok": lift_check.edge_count_ok,
            "connected": lift_check.connected,
            "acyclic": lift_check.acyclic,
        },
        "k": cfg.k,
        "margin": margin,
        "stretch": reg.c,
        "w_size": reg.w.symmetric().len(),
        "interior_vertices": reg.interior.len(),
        "irregular_interior": reg.irregular.iter().map(|&v| w.graph.label(v)).collect::<Vec<_>>(),
        "tree_check": {
            "edge_count_ok": tree_check.edge_count_ok,
            "connected": tree_check.connected,
            "acyclic": tree_check.acyclic,
        },
        "tree": reg.tree.to_json(labels),
        "ok": ok,
    });
    let dot = spanning_dot(&reg.tree.edges, &w);
    Ok((body, Some(dot)))
}

pub(crate) fn spanning_dot(edges: &[(usize, usize)], w: &CayleyWindow) -> String {
    let mut out = String::from("graph tree {\n");
    for v in 0..w.graph.n() {
        let shape = if w.graph.is_interior(v) { "ellipse" } else { "box" };
        out.push_str(&format!("  {v} [label=\"{}\", shape={shape}];\n", escape(&w.graph.label(v))));
    }
    for &(u, v) in edges {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s.replace('"', "\\\"")
    }
}

/// Window, Hamiltonian order and the position of the identity in it: a
/// boustrophedon box for ℤ², the integers themselves for ℤ, and otherwise
/// the order of a ball whose closed walk is cut at its farthest vertex.
pub fn tiling_window(cfg: &RunConfig, g: &Group) -> Result<(TileWindow, Vec<usize>, usize)> {
    match g.spec().family {
        Family::FreeAbelian(2) => {
            let side = cfg.grid.max(1);
            Ok((TileWindow::grid(g, side, side, 1)?, boustrophedon(side, side), 0))
        }
        Family::FreeAbelian(1) | Family::Free(1) => {
            let r = cfg.radius as i64;
            let w = TileWindow::interval(g, -r, r, 1)?;
            Ok((w, (0..2 * cfg.radius + 1).collect(), cfg.radius))
        }
        _ => {
            let w = window(cfg, g, 1)?;
            let far = w.graph.n() - 1;
            let walk = double_cover_walk(&w.graph)?;
            let walk = rotate_closed_walk(&walk, far).context("closed walk misses a vertex")?;
            let order = hamiltonian_from_walk(&w.graph, walk)?.order.vertices;
            let origin = order.iter().position(|&v| v == 0).context("identity missing from the order")?;
            Ok((TileWindow::from_ball(&w.ball), order, origin))
        }
    }
}

fn tiling(cfg: &RunConfig) -> Result<(Value, Option<String>)> {
    let (spec, g) = cfg.group()?;
    if spec.is_finite() {
        bail!("the tiling pipeline pushes forward from Z and needs an infinite group");
    }
    let z = Group::new(&GroupSpec::free_abelian(1))?;
    let (w, order, origin) = tiling_window(cfg, &g)?;
    let phi = path_bijection(&z, &w, &order, origin)?;
    let lo = -(origin as i64);
    let hi = (order.len() - origin) as i64 - 1;
    let monos = interval_monotilings_z(&z, &cfg.ns, lo, hi)?;
    let mut levels = Vec::new();
    let mut pushed: Vec<Polytiling> = Vec::new();
    let mut all_ok = true;
    for (n, mono) in cfg.ns.iter().zip(&monos) {
        let push = pushforward_polytiling(&z, &g, &phi, mono)?;
        let cert = verify_polytiling(&g, &push.tiling, &w);
        let oracle = exact_cover_given(&g, &w, &push.tiling, 2)?;
        let oracle_exact = oracle.count == 1 && oracle.solution.as_ref().map(Vec::len) == Some(oracle.placements.len());
        let agree = cert.exact() == oracle_exact;
        let fair = push.tiling.tiles.is_fair() && push.tiling.tiles.tiles.iter().all(|t| t.len() as u64 == *n);
        let preserved = partition_preserved(&z, &g, &phi, mono, &push.tiling, &w);
        let bounded = push.shape_classes_bounded();
        all_ok &= cert.exact() && agree && fair && preserved && bounded;
        levels.push(json!({
            "n": n,
            "classes": push.tiling.k(),
            "fair": fair,
            "exact": cert.exact(),
            "uncovered": cert.uncovered.len(),
            "doubly_covered": cert.doubly_covered.len(),
            "oracle_agrees": agree,
            "partition_preserved": preserved,
            "dropped_centers": push.dropped.len(),
            "shape_radius": push.shape_radius,
            "shape_ball_bound": push.ball_bound,
            "tiling": push.tiling.to_json(&g),
        }));
        pushed.push(push.tiling);
    }
    let ccc = ccc_check(&g, &pushed, &w);
    let ok = all_ok && ccc.all();
    let body = json!({
        "group": spec.to_json(),
        "window_size": w.len(),
        "interior_size": w.interior_len(),
        "levels": levels,
        "ccc": ccc.to_json(),
        "ok": ok,
    });
    Ok((body, None))
}

/// Checks elementwise that the image of the source partition is the
/// partition induced by the pushed-forward polytiling.
fn partition_preserved(
    z: &Group,
    g: &Group,
    phi: &BTreeMap<caykit::group::Element, caykit::group::Element>,
    mono: &Polytiling,
    pushed: &Polytiling,
    w: &TileWindow,
) -> bool {
    let induced = caykit::tiling::induced_partition(g, pushed, w);
    let tile = &mono.tiles.tiles[0];
    for d in &mono.deltas[0] {
        let imgs: Option<Vec<&caykit::group::Element>> = tile.iter().map(|t| phi.get(&z.multiply(d, t))).collect();
        let Some(imgs) = imgs else { continue };
        let center = &phi[d];
        for x in imgs {
            let Some(i) = w.index_of(x) else { return false };
            match &induced[i] {
                Some((_, c)) if c == center => {}
                _ => return false,
            }
        }
    }
    true
}

fn treemap(cfg: &RunConfig) -> Result<(Value, Option<String>)> {
    let target_rule = if cfg.target.is_null() {
        json!({"seeded": {"lo": 3, "hi": cfg.r, "seed": cfg.seed}})
    } else {
        cfg.target.clone()
    };
    let mut target = RootedTree::from_json(&target_rule)?;
    let map = build_tree_map(&mut target, cfg.r, cfg.depth)?;
    let clauses = certify(&map, &mut target)?;
    let qi = verify_quasi_isometry(&map, &mut target)?;
    let density_ok = qi.density_radius <= cfg.r + 1;
    let ok = clauses.all() && map.certificates.all() && qi.ok() && density_ok;
    let body = json!({
        "target": target_rule,
        "map": tree_map_json(&map, &target),
        "recomputed_clauses": clauses.clauses,
        "qi": {
            "pairs": qi.pairs,
            "case1_pairs": qi.case1_pairs,
            "case2_pairs": qi.case2_pairs,
            "upper_constant": cfg.r + 1,
            "additive_constant": cfg.r + 2,
            "upper_violations": qi.upper_violations,
            "lower_violations": qi.lower_violations,
            "worst_ratio": qi.worst_ratio,
            "worst_additive": qi.worst_additive,
            "density_checked": qi.density_checked,
            "density_radius": qi.density_radius,
            "density_violations": qi.density_violations,
        },
        "ok": ok,
    });
    Ok((body, None))
}

fn zz3(cfg: &RunConfig) -> Result<(Value, Option<String>)> {
    let (spec, g) = cfg.group()?;
    let w = window(cfg, &g, 1)?;
    let report = z_z3_no_regular_tree_check(&g, &w)?;
    let ok = report.no_regular_tree();
    let mut body = json!({ "group": spec.to_json() });
    body["report"] = report.to_json();
    body["conclusion"] = json!(if ok {
        "no interior-regular spanning tree"
    } else {
        "obstruction not confirmed on this window"
    });
    body["ok"] = json!(ok);
    Ok((body, Some(w.graph.to_dot("zz3"))))
}
