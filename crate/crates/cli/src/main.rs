use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use caykit::graph::{cayley_ball_graph, Multigraph};
use caykit::group::{enumerate_ball, Group};
use caykit::hamilton::{hamiltonian_in_power, verify_translation_like, PathAction};
use caykit::trees::{build_tree_map, certify, check_perimeter, perimeter_decompose, tree_map_json, verify_quasi_isometry, RootedTree};
use caykit::tiling::{
    sized_fair_polytile, tile_search_exact_cover, verify_polytiling, Polytile, Polytiling, SearchMode, TileWindow,
};
use caykit_cli::{parse_group, run_pipeline, Pipeline, RunConfig, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "caykit", version, about = "Finite-window experiments on Cayley graphs")]
struct Cli {
    /// Size cap for ball enumeration.
    #[arg(long, global = true, env = "CAYKIT_CAP")]
    cap: Option<usize>,
    /// Worker threads for independent pipelines.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Emit {
    Json,
    Dot,
}

#[derive(Args)]
struct GroupArgs {
    /// Group: shorthand (Z^2, F2, ZZ3, C7, S4, "Z x C2"), inline JSON, or a spec file.
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 3)]
    radius: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a ball of the Cayley graph.
    Ball {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Hamiltonian order in a bounded power of a window or of a graph file.
    Hampath {
        #[arg(long, required_unless_present = "graph")]
        group: Option<String>,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Graph JSON `{vertices, edges: [[u, v, mult]]}` instead of a group window.
        #[arg(long, conflicts_with = "group")]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Build the path action of a window's Hamiltonian order and check it is translation-like.
    ActionVerify {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
    },
    /// Perimeter of a rooted tree.
    Perimeter {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        root_degree: Option<usize>,
    },
    /// Map from the (r+1)-regular tree onto a target tree, with certificates.
    Treemap {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, default_value_t = 5)]
        r: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Degree-k spanning tree of a window of Cay(G; S^c).
    Spantree {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Local obstruction to regular spanning trees of Cay(Z*Z3; {t, u}).
    Zz3check {
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Polytiling tools.
    Tile {
        #[command(subcommand)]
        action: TileCommand,
    },
    /// Run composed pipelines and write their certificates.
    Pipeline {
        /// burnside, vonneumann, tiling, treemap, zz3, or all.
        #[arg(required = true)]
        names: Vec<String>,
        /// JSON object overriding the default configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for `<name>.json` (and `<name>.dot`); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args)]
struct TreeArgs {
    /// Tree JSON: `{"regular": k}`, `{"seeded": {...}}` or `{"explicit": [...]}`.
    #[arg(long)]
    tree: Option<PathBuf>,
    #[arg(long, conflicts_with = "tree")]
    regular: Option<usize>,
    /// `lo,hi,seed`
    #[arg(long, conflicts_with_all = ["tree", "regular"])]
    seeded: Option<String>,
}

impl TreeArgs {
    fn rule(&self) -> Result<Value> {
        if let Some(p) = &self.tree {
            return read_json(p);
        }
        if let Some(k) = self.regular {
            return Ok(json!({ "regular": k }));
        }
        if let Some(s) = &self.seeded {
            let parts: Vec<u64> = s
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .context("--seeded expects lo,hi,seed")?;
            let [lo, hi, seed] = parts[..] else { bail!("--seeded expects lo,hi,seed") };
            return Ok(json!({ "seeded": { "lo": lo, "hi": hi, "seed": seed } }));
        }
        bail!("one of --tree, --regular or --seeded is required")
    }
}

#[derive(Args)]
struct TileWindowArgs {
    #[arg(long)]
    group: String,
    /// Ball radius of the window.
    #[arg(long, default_value_t = 4)]
    window: usize,
    /// Interior margin.
    #[arg(long, default_value_t = 1)]
    margin: usize,
}

impl TileWindowArgs {
    fn build(&self, cap: Option<usize>) -> Result<(Group, TileWindow)> {
        let g = load_group(&self.group, cap)?;
        let s = g.generating_set()?;
        if self.margin > self.window {
            bail!("margin {} exceeds window radius {}", self.margin, self.window);
        }
        let ball = enumerate_ball(&g, &s, self.window)?.with_margin(self.margin);
        Ok((g, TileWindow::from_ball(&ball)))
    }
}

#[derive(Subcommand)]
enum TileCommand {
    /// Coverage certificate of a polytiling (`{"tiles": [...], "deltas": [...]}`).
    Verify {
        #[command(flatten)]
        w: TileWindowArgs,
        #[arg(long)]
        tiling: PathBuf,
    },
    /// Push interval monotilings forward through a Hamiltonian order.
    Push {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value_t = 12)]
        grid: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        ns: Vec<u64>,
    },
    /// Exact-cover search for a tiling of the window interior.
    Search {
        #[command(flatten)]
        w: TileWindowArgs,
        /// Tiles JSON: arrays of element token strings.
        #[arg(long)]
        tiles: PathBuf,
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
    /// ccc report of pushed-forward interval monotilings.
    Ccc {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value_t = 12)]
        grid: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        ns: Vec<u64>,
    },
    /// Fair polytile with F inside the first tile and |T1| = n.
    Sized {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated elements of F, as token strings.
        #[arg(long, default_value = "")]
        f: String,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let v = json!({ "schema": SCHEMA_VERSION, "error": format!("{e:#}") });
            print(&v);
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_json(p: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
}

fn load_group(arg: &str, cap: Option<usize>) -> Result<Group> {
    let mut g = Group::new(&parse_group(arg)?)?;
    if let Some(c) = cap {
        g.set_ball_cap(c);
    }
    Ok(g)
}

fn print(v: &Value) {
    emit_text(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

/// Writes to stdout, exiting quietly when the reader has gone away.
fn emit_text(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

fn with_schema(mut v: Value) -> Value {
    v["schema"] = json!(SCHEMA_VERSION);
    v
}

/// Returns whether every check in the command's certificate passed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Ball { g, emit } => {
            let group = load_group(&g.group, cli.cap)?;
            let s = group.generating_set()?;
            let w = cayley_ball_graph(&group, &s, g.radius, 0)?;
            match emit {
                Emit::Dot => emit_text(&w.graph.to_dot("ball")),
                Emit::Json => print(&with_schema(json!({
                    "group": group.spec().to_json(),
                    "radius": g.radius,
                    "size": w.ball.len(),
                    "elements": w.ball.elements().iter().enumerate()
                        .map(|(i, e)| json!({ "word": group.render(e), "length": w.ball.distance_at(i) }))
                        .collect::<Vec<_>>(),
                }))),
            }
            Ok(true)
        }
        Command::Hampath { group, radius, graph, emit } => {
            let host = match (group, graph) {
                (_, Some(p)) => Multigraph::from_json(&read_json(p)?)?,
                (Some(gs), None) => {
                    let g = load_group(gs, cli.cap)?;
                    let s = g.generating_set()?;
                    cayley_ball_graph(&g, &s, *radius, 1)?.graph
                }
                (None, None) => bail!("--group or --graph is required"),
            };
            let ham = hamiltonian_in_power(&host)?;
            let order = &ham.order.vertices;
            let max_step = order.windows(2).map(|p| host.bfs(p[0])[p[1]]).max().unwrap_or(0);
            let ok = max_step <= ham.power_k;
            match emit {
                Emit::Dot => {
                    let mut dot = host.to_dot("hampath");
                    let tail = dot.rfind('}').expect("closed");
                    let chain: Vec<String> = order.iter().map(|v| v.to_string()).collect();
                    dot.insert_str(tail, &format!("  edge [color=red, constraint=false];\n  {};\n", chain.join(" -- ")));
                    emit_text(&dot);
                }
                Emit::Json => print(&with_schema(json!({
                    "vertices": host.n(),
                    "max_degree": ham.d,
                    "step_bound": ham.power_k,
                    "max_step": max_step,
                    "order": order.iter().map(|&v| host.label(v)).collect::<Vec<_>>(),
                    "ok": ok,
                }))),
            }
            Ok(ok)
        }
        Command::ActionVerify { g, max_word_len } => {
            let group = load_group(&g.group, cli.cap)?;
            let s = group.generating_set()?;
            let w = cayley_ball_graph(&group, &s, g.radius, 1)?;
            let ham = hamiltonian_in_power(&w.graph)?;
            let table = PathAction::new(&ham.order, w.graph.n())?.to_table();
            let rep = verify_translation_like(&table, &w.graph, *max_word_len)?;
            let ok = rep.is_free() && rep.lipschitz_c <= ham.power_k;
            print(&with_schema(json!({
                "acting": "Z",
                "vertices": w.graph.n(),
                "free": rep.is_free(),
                "freeness_violations": rep.freeness_violations.len(),
                "max_displacement": rep.max_displacement,
                "lipschitz_c": rep.lipschitz_c,
                "step_bound": ham.power_k,
                "undefined_points": rep.undefined_points,
                "max_word_len": rep.max_word_len,
                "ok": ok,
            })));
            Ok(ok)
        }
        Command::Perimeter { tree, r, root_degree } => {
            let mut t = RootedTree::from_json(&tree.rule()?)?;
            if let Some(d) = root_degree {
                t = t.with_root_degree(*d);
            }
            let p = perimeter_decompose(&mut t, *r)?;
            let kids = t.children(0)?;
            let check = check_perimeter(&mut t, 0, &kids, &p.members, Some(*r), Some(*r))?;
            print(&with_schema(json!({
                "r": r,
                "members": p.members.iter().map(|&(v, d)| json!({ "vertex": t.label(v), "d": d })).collect::<Vec<_>>(),
                "radius": p.radius,
                "check": {
                    "sum": check.sum_ok, "degree": check.degree_ok, "antichain": check.antichain_ok,
                    "covering": check.covering_ok, "not_root": check.not_root_ok, "radius": check.radius_ok,
                },
                "ok": check.all(),
            })));
            Ok(check.all())
        }
        Command::Treemap { tree, r, depth } => {
            let mut target = RootedTree::from_json(&tree.rule()?)?;
            let map = build_tree_map(&mut target, *r, *depth)?;
            let clauses = certify(&map, &mut target)?;
            let qi = verify_quasi_isometry(&map, &mut target)?;
            let ok = clauses.all() && qi.ok();
            let mut v = tree_map_json(&map, &target);
            v["recomputed_clauses"] = json!(clauses.clauses);
            v["qi"] = json!({
                "pairs": qi.pairs, "upper_violations": qi.upper_violations, "lower_violations": qi.lower_violations,
                "worst_ratio": qi.worst_ratio, "worst_additive": qi.worst_additive,
                "density_radius": qi.density_radius, "density_violations": qi.density_violations,
            });
            v["ok"] = json!(ok);
            print(&with_schema(v));
            Ok(ok)
        }
        Command::Spantree { g, k, emit } => {
            let mut cfg = RunConfig::for_pipeline(Pipeline::Vonneumann);
            cfg.group = g.group.clone();
            cfg.radius = g.radius;
            cfg.k = *k;
            cfg.emit_dot = *emit == Emit::Dot;
            if let Some(c) = cli.cap {
                cfg.ball_cap = c;
            }
            let a = run_pipeline(Pipeline::Vonneumann, &cfg)?;
            match (&a.dot, emit) {
                (Some(d), Emit::Dot) => emit_text(d),
                _ => emit_text(&a.to_json_string()),
            }
            Ok(a.ok)
        }
        Command::Zz3check { radius } => {
            let mut cfg = RunConfig::for_pipeline(Pipeline::Zz3);
            cfg.radius = *radius;
            let a = run_pipeline(Pipeline::Zz3, &cfg)?;
            emit_text(&a.to_json_string());
            Ok(a.ok)
        }
        Command::Tile { action } => tile(action, cli.cap),
        Command::Pipeline { names, config, group, radius, k, seed, out, dot } => {
            let mut list: Vec<Pipeline> = Vec::new();
            for n in names {
                if n == "all" {
                    list.extend(Pipeline::ALL);
                } else {
                    list.push(n.parse()?);
                }
            }
            let overrides = match config {
                Some(p) => read_json(p)?,
                None => json!({}),
            };
            let configs = list
                .iter()
                .map(|&p| {
                    let mut cfg = RunConfig::from_json_over(p, &overrides)?;
                    if let Some(g) = group {
                        cfg.group = g.clone();
                    }
                    if let Some(r) = radius {
                        cfg.radius = *r;
                    }
                    if let Some(k) = k {
                        cfg.k = *k;
                    }
                    if let Some(s) = seed {
                        cfg.seed = *s;
                    }
                    if let Some(c) = cli.cap {
                        cfg.ball_cap = c;
                    }
                    cfg.emit_dot |= *dot;
                    Ok((p, cfg))
                })
                .collect::<Result<Vec<_>>>()?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build()?;
            let results: Vec<Result<caykit_cli::Artifact>> = pool.install(|| {
                use rayon::prelude::*;
                configs.par_iter().map(|(p, cfg)| run_pipeline(*p, cfg)).collect()
            });
            let mut all_ok = true;
            for ((p, _), res) in configs.iter().zip(results) {
                let a = res.with_context(|| format!("pipeline {p}"))?;
                all_ok &= a.ok;
                match out {
                    Some(dir) => {
                        std::fs::create_dir_all(dir)?;
                        std::fs::write(dir.join(format!("{p}.json")), a.to_json_string())?;
                        if let Some(d) = &a.dot {
                            std::fs::write(dir.join(format!("{p}.dot")), d)?;
                        }
                        eprintln!("{p}: {}", if a.ok { "ok" } else { "FAILED" });
                    }
                    None => emit_text(&a.to_json_string()),
                }
            }
            Ok(all_ok)
        }
    }
}

fn tile(action: &TileCommand, cap: Option<usize>) -> Result<bool> {
    match action {
        TileCommand::Verify { w, tiling } => {
            let (g, win) = w.build(cap)?;
            let p = Polytiling::from_json(&g, &read_json(tiling)?)?;
            let cert = verify_polytiling(&g, &p, &win);
            let mut v = cert.to_json(&g, &win);
            v["fair"] = json!(p.tiles.is_fair());
            print(&with_schema(v));
            Ok(cert.exact())
        }
        TileCommand::Push { group, window, grid, ns } | TileCommand::Ccc { group, window, grid, ns } => {
            let mut cfg = RunConfig::for_pipeline(Pipeline::Tiling);
            cfg.group = group.clone();
            cfg.radius = *window;
            cfg.grid = *grid;
            cfg.ns = ns.clone();
            if let Some(c) = cap {
                cfg.ball_cap = c;
            }
            let a = run_pipeline(Pipeline::Tiling, &cfg)?;
            if matches!(action, TileCommand::Ccc { .. }) {
                let ccc = &a.json["ccc"];
                print(&with_schema(json!({ "ccc": ccc, "ok": ccc["centered"].as_bool() == Some(true)
                    && ccc["cofinal"].as_bool() == Some(true) && ccc["coherent"].as_bool() == Some(true) })));
                return Ok(ccc["centered"] == json!(true) && ccc["cofinal"] == json!(true) && ccc["coherent"] == json!(true));
            }
            emit_text(&a.to_json_string());
            Ok(a.ok)
        }
        TileCommand::Search { w, tiles, count, limit } => {
            let (g, win) = w.build(cap)?;
            let p = Polytile::from_json(&g, &read_json(tiles)?)?;
            let mode = if *count { SearchMode::Count { limit: *limit } } else { SearchMode::Find };
            let out = tile_search_exact_cover(&g, &win, &p, mode)?;
            let mut v = json!({ "placements": out.placements.len(), "count": out.count, "truncated": out.truncated });
            if let Some(t) = out.tiling(&p) {
                let cert = verify_polytiling(&g, &t, &win);
                v["tiling"] = t.to_json(&g);
                v["exact"] = json!(cert.exact());
            }
            print(&with_schema(v));
            Ok(true)
        }
        TileCommand::Sized { group, n, f, window } => {
            let g = load_group(group, cap)?;
            let f: Vec<_> = f.split(',').filter(|s| !s.trim().is_empty()).map(|s| g.parse(s)).collect::<caykit::Result<_>>()?;
            let s = sized_fair_polytile(&g, &f, *n, *window)?;
            let t1 = &s.tiling.tiles.tiles[0];
            let ok = t1.len() == *n && f.iter().all(|x| t1.contains(x)) && s.tiling.tiles.is_fair() && s.coverage.exact();
            print(&with_schema(json!({
                "n": n,
                "classes": s.tiling.k(),
                "first_tile": t1.iter().map(|x| g.render(x)).collect::<Vec<_>>(),
                "fair": s.tiling.tiles.is_fair(),
                "exact": s.coverage.exact(),
                "uncovered": s.coverage.uncovered.len(),
                "dropped_centers": s.dropped,
                "ok": ok,
            })));
            Ok(ok)
        }
    }
}
