//! Command-line front end. JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success or pass, 1 a check failed, 2 usage or input error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::equitable::{check_equitable, divisibility, spectral_transfer_gap, EquitableError, PartitionSpec};
use crate::families::*;
use crate::graph::{from_graph6, to_graph6, Graph};
use crate::par::Workers;
use crate::search::{extremal_search, parse_pattern, theorem_report, SearchOptions, DEFAULT_EDGE_LIMIT};
use crate::spectral::{graph_char_poly, largest_real_root, spectral_radius, DEFAULT_TOL};
use crate::subgraph::contains_subgraph;
use crate::verify::{
    check_case2_identities, check_ew_bound, check_lemma_gmt, check_lemma_k4m, check_pendant_lemma,
    check_triangle_free_bound, verify_eigenequations, CheckReport, Verdict,
};

pub const JOBS_ENV: &str = "SPECTRAL_EXTREMAL_JOBS";
pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Parser)]
#[command(name = "spectral-extremal", version, about = "Spectral extremal graph workbench")]
pub struct Cli {
    /// Numeric tolerance for floating-point checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Worker threads for the search.
    #[arg(long, global = true, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

/// A graph given as a family token with parameters, or as graph6.
#[derive(Debug, Clone, Args)]
pub struct GraphArg {
    /// book, gmt, k4m, h33, h43, fk, cycle, star, path, complete, case2h,
    /// case2h2, or a graph6 string.
    pub graph: String,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family member; prints graph6 and its blocks.
    Construct(GraphArg),
    /// Spectral radius by power iteration.
    Rho(GraphArg),
    /// Exact characteristic polynomial of the adjacency matrix.
    Charpoly(GraphArg),
    /// Subgraph containment of a pattern in a host.
    Contains {
        #[command(flatten)]
        host: GraphArg,
        /// Pattern token (h33, h43, k3, c4, f2, ...) or graph6.
        pattern: String,
        #[arg(long)]
        induced: bool,
    },
    /// Quotient matrix of a partition, with divisibility and transfer checks.
    Quotient {
        #[command(flatten)]
        graph: GraphArg,
        /// Blocks as `0,1;2,3,4`. Defaults to the family's own blocks.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Run one of the structural or polynomial checks.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Graph for the graph-level checks (nosal, ew, pendant, eigen).
        #[arg(long)]
        graph: Option<String>,
    },
    /// Exhaustive extremal search over connected graphs with `m` edges.
    Search(SearchArgs),
    /// Search with the theorem's patterns plus structural annotations; odd m only.
    Report(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Gmt,
    K4m,
    Case2,
    Nosal,
    Ew,
    Pendant,
    Eigen,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub edges: usize,
    /// Comma-separated pattern tokens.
    #[arg(long, default_value = "h33,h43", value_delimiter = ',')]
    pub forbid: Vec<String>,
    #[arg(long)]
    pub induced: bool,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    pub limit: usize,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long)]
    pub timing: bool,
}

/// Validated run settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tol: f64,
    pub jobs: usize,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

struct Output {
    schema: &'static str,
    body: Value,
    passed: bool,
}

fn output<T: Serialize>(schema: &'static str, body: &T, passed: bool) -> Result<Output, String> {
    let body = serde_json::to_value(body).map_err(|e| e.to_string())?;
    Ok(Output { schema, body, passed })
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Outcome::usage(format!("--tol must be positive, got {}", cli.tol));
    }
    let jobs = match cli.jobs {
        Some(0) => return Outcome::usage("--jobs must be at least 1"),
        Some(j) => j,
        None => Workers::available().0,
    };
    let config = RunConfig { tol: cli.tol, jobs, format: cli.format };
    match dispatch(&cli.command, &config) {
        Ok(out) => {
            let mut doc = serde_json::Map::new();
            doc.insert("schema".into(), json!(format!("{}/{SCHEMA_VERSION}", out.schema)));
            if let Value::Object(fields) = out.body {
                doc.extend(fields);
            }
            let doc = Value::Object(doc);
            let stdout = match config.format {
                Format::Json => serde_json::to_string_pretty(&doc).unwrap() + "\n",
                Format::Plain => plain(&doc),
            };
            Outcome { code: if out.passed { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(msg) => Outcome::usage(msg),
    }
}

fn plain(doc: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            match v {
                Value::String(text) => s.push_str(&format!("{k}: {text}\n")),
                other => s.push_str(&format!("{k}: {other}\n")),
            }
        }
    }
    s
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, String> {
    v.ok_or_else(|| format!("{family} needs --{flag}"))
}

/// Resolves a family token or graph6 string, with the family's blocks when it has them.
pub fn resolve_graph(arg: &GraphArg) -> Result<(Graph, Option<BlockLabeling>), String> {
    let f = arg.graph.as_str();
    let plain = |g: Result<Graph, FamilyError>| g.map(|g| (g, None)).map_err(|e| e.to_string());
    let labelled = |g: Result<(Graph, BlockLabeling), FamilyError>| g.map(|(g, b)| (g, Some(b))).map_err(|e| e.to_string());
    match f {
        "book" => plain(make_book(need(arg.m, "m", f)?)),
        "gmt" => labelled(make_gmt(need(arg.m, "m", f)?, need(arg.t, "t", f)?)),
        "k4m" => labelled(make_k4m(need(arg.m, "m", f)?)),
        "h33" => plain(make_h_cycle_triangle(3)),
        "h43" => plain(make_h_cycle_triangle(4)),
        "fk" => plain(make_friendship(need(arg.k, "k", f)?)),
        "cycle" => plain(make_cycle(need(arg.n, "n", f)?)),
        "star" => plain(make_star(need(arg.m.or(arg.n), "m", f)?)),
        "path" => plain(make_path(need(arg.n, "n", f)?)),
        "complete" => plain(make_complete(need(arg.n, "n", f)?)),
        "split-star" => plain(make_split_star(need(arg.n, "n", f)?, need(arg.k, "k", f)?)),
        "case2h" => labelled(make_case2_h(need(arg.m, "m", f)?, need(arg.t, "t", f)?)),
        "case2h2" => labelled(make_case2_h2(need(arg.m, "m", f)?)),
        _ => from_graph6(f).map(|g| (g, None)).map_err(|e| format!("{f:?} is neither a family token nor graph6: {e}")),
    }
}

fn graph_summary(g: &Graph) -> Value {
    json!({ "graph6": to_graph6(g), "order": g.order(), "size": g.size() })
}

fn parse_blocks(order: usize, text: &str) -> Result<PartitionSpec, String> {
    let mut lists = Vec::new();
    for part in text.split(';') {
        let mut block = Vec::new();
        for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| format!("bad vertex {tok:?} in --blocks"))?;
            if v >= order {
                return Err(format!("vertex {v} out of range for order {order}"));
            }
            block.push(v);
        }
        lists.push(block);
    }
    Ok(PartitionSpec::from_lists(order, &lists))
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Output, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match cmd {
        Command::Construct(arg) => {
            let (g, blocks) = resolve_graph(arg)?;
            let mut body = graph_summary(&g);
            let blocks = blocks.map(|b| {
                b.blocks
                    .iter()
                    .map(|blk| json!({ "name": blk.name, "vertices": blk.vertices.to_vec() }))
                    .collect::<Vec<_>>()
            });
            body["blocks"] = json!(blocks);
            body["edges"] = json!(g.edges());
            output("construct", &body, true)
        }
        Command::Rho(arg) => {
            let (g, _) = resolve_graph(arg)?;
            let r = spectral_radius(&g, cfg.tol).map_err(|e| err(&e))?;
            let mut body = graph_summary(&g);
            body["rho"] = json!(r.rho);
            body["iterations"] = json!(r.iterations);
            body["residual"] = json!(r.residual);
            body["perron"] = json!(r.perron);
            output("rho", &body, true)
        }
        Command::Charpoly(arg) => {
            let (g, _) = resolve_graph(arg)?;
            let p = graph_char_poly(&g);
            let mut body = graph_summary(&g);
            body["coefficients"] = json!(p.coeff_strings());
            body["polynomial"] = json!(p.to_string());
            body["largest_root"] = json!(largest_real_root(&p, cfg.tol).ok());
            output("charpoly", &body, true)
        }
        Command::Contains { host, pattern, induced } => {
            let (h, _) = resolve_graph(host)?;
            let p = parse_pattern(pattern).map_err(|e| err(&e))?;
            let emb = contains_subgraph(&h, &p.graph, *induced).map_err(|e| err(&e))?;
            let body = json!({
                "host": graph_summary(&h),
                "pattern": pattern,
                "induced": induced,
                "contains": emb.is_some(),
                "embedding": emb.map(|e| e.map),
            });
            output("contains", &body, true)
        }
        Command::Quotient { graph, blocks } => {
            let (g, labels) = resolve_graph(graph)?;
            let (p, dropped) = match (blocks, labels) {
                (Some(text), _) => (parse_blocks(g.order(), text)?, 0),
                (None, Some(l)) => l.to_partition(),
                (None, None) => return Err(format!("{} has no built-in blocks; pass --blocks", graph.graph)),
            };
            let mut body = graph_summary(&g);
            body["blocks"] = json!(p.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
            body["empty_blocks_dropped"] = json!(dropped);
            match check_equitable(&g, &p) {
                Ok(q) => {
                    let d = divisibility(&g, &p).map_err(|e| err(&e))?;
                    body["equitable"] = json!(true);
                    body["matrix"] = json!(q.entries);
                    body["quotient_poly"] = json!(d.quotient_poly.to_string());
                    body["divides"] = json!(d.divides);
                    body["cofactor"] = json!(d.cofactor.map(|c| c.to_string()));
                    let gap = match spectral_transfer_gap(&g, &p, cfg.tol) {
                        Ok(gap) => Some(gap),
                        Err(EquitableError::Disconnected) => None,
                        Err(e) => return Err(e.to_string()),
                    };
                    body["transfer_gap"] = json!(gap);
                    let passed = d.divides && gap.is_none_or(|x| x <= cfg.tol);
                    output("quotient", &body, passed)
                }
                Err(EquitableError::NotEquitable { vertex, block, expected, found }) => {
                    body["equitable"] = json!(false);
                    body["violation"] = json!({ "vertex": vertex, "block": block, "expected": expected, "found": found });
                    output("quotient", &body, false)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify { lemma, m, t, n, k, graph } => {
            let report = run_verify(*lemma, [*m, *t, *n, *k], graph.as_deref(), cfg)?;
            let passed = report.verdict != Verdict::Fail;
            output("check-report", &report, passed)
        }
        Command::Search(args) => {
            let patterns = args.forbid.iter().map(|p| parse_pattern(p)).collect::<Result<Vec<_>, _>>().map_err(|e| err(&e))?;
            let r = extremal_search(args.edges, &patterns, args.induced, &search_options(args, cfg)).map_err(|e| err(&e))?;
            output("search-report", &r, true)
        }
        Command::Report(args) => {
            let r = theorem_report(args.edges, &search_options(args, cfg)).map_err(|e| err(&e))?;
            let passed = r.winners.iter().all(|w| w.pendant.passed() && w.ew.passed());
            output("theorem-report", &r, passed)
        }
    }
}

fn search_options(args: &SearchArgs, cfg: &RunConfig) -> SearchOptions {
    SearchOptions {
        max_n: args.max_n,
        workers: Workers(cfg.jobs),
        cache_dir: args.cache.clone(),
        edge_limit: args.limit,
        tol: cfg.tol,
        timing: args.timing,
    }
}

fn run_verify(lemma: Lemma, params: [Option<usize>; 4], graph: Option<&str>, cfg: &RunConfig) -> Result<CheckReport, String> {
    // numeric claims are checked at a margin no tighter than 1e-8
    let tol = cfg.tol.max(1e-8);
    let [m, t, n, k] = params;
    let err = |e: crate::verify::VerifyError| e.to_string();
    let name = format!("{lemma:?}").to_lowercase();
    let graph_of = || -> Result<Graph, String> {
        let token = graph.ok_or_else(|| format!("--lemma {name} needs --graph"))?;
        let arg = GraphArg { graph: token.to_string(), m, t, n, k };
        resolve_graph(&arg).map(|(g, _)| g)
    };
    match lemma {
        Lemma::Gmt => check_lemma_gmt(need(m, "m", "gmt")?, need(t, "t", "gmt")?, tol).map_err(err),
        Lemma::K4m => check_lemma_k4m(need(m, "m", "k4m")?, tol).map_err(err),
        Lemma::Case2 => check_case2_identities(need(m, "m", "case2")?, need(t, "t", "case2")?, tol).map_err(err),
        Lemma::Nosal => check_triangle_free_bound(&graph_of()?, tol).map_err(err),
        Lemma::Ew => check_ew_bound(&graph_of()?, tol).map_err(err),
        Lemma::Pendant => check_pendant_lemma(&graph_of()?, tol).map_err(err),
        Lemma::Eigen => verify_eigenequations(&graph_of()?, tol).map_err(err),
    }
}
