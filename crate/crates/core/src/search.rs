//! Exhaustive search over connected graphs with a fixed number of edges.
//!
//! Generation is by canonical augmentation: a child is obtained from a
//! canonical parent by adding an edge (between existing vertices, or to a
//! new pendant vertex), and is kept only when deleting its canonical last
//! edge gives back that parent. The canonical last edge is the deletable
//! edge with the largest label pair in the child's canonical form, where an
//! edge is deletable when it is a pendant edge or not a bridge.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::families::{make_book, make_complete, make_cycle, make_friendship, make_h_cycle_triangle};
use crate::graph::{canonical_form, from_graph6, to_graph6, Graph, Graph6Error};
use crate::par::{par_map, Workers};
use crate::spectral::{
    book_bound, compare_largest_roots, graph_char_poly, spectral_radius, RootError, SpectralError, DEFAULT_TOL,
};
use crate::subgraph::{contains_bowtie, contains_subgraph};
use crate::verify::{
    check_ew_bound, check_pendant_lemma, decompose_at_max, neighbourhood_shape, CheckReport, Decomposition,
    NeighbourhoodShape, VerifyError, THEOREM_MIN_SIZE,
};

pub const DEFAULT_EDGE_LIMIT: usize = 13;
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("edge count must be at least 1")]
    NoEdges,
    #[error("edge count {m} is over the enumeration limit {limit}")]
    OverLimit { m: usize, limit: usize },
    #[error("the theorem report needs an odd edge count; even sizes are open (use extremal_search to explore), got {0}")]
    EvenSize(usize),
    #[error("unknown pattern {0:?}")]
    UnknownPattern(String),
    #[error("no graph survives the filter")]
    NoSurvivors,
    #[error("cache {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// A named forbidden graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
    triangles: usize,
}

impl Pattern {
    pub fn new(name: &str, graph: Graph) -> Self {
        let triangles = graph.triangle_count();
        Self { name: name.to_string(), graph, triangles }
    }
}

/// `h33`, `h43`, `h{l}3`, `k{n}`, `c{n}`, `f{k}`, or a graph6 string.
pub fn parse_pattern(token: &str) -> Result<Pattern, SearchError> {
    let unknown = || SearchError::UnknownPattern(token.to_string());
    let num = |s: &str| s.parse::<usize>().ok();
    let graph = if let Some(l) = token.strip_prefix('h').and_then(|r| r.strip_suffix('3')).and_then(num) {
        make_h_cycle_triangle(l).map_err(|_| unknown())?
    } else if let Some(n) = token.strip_prefix('k').and_then(num) {
        make_complete(n).map_err(|_| unknown())?
    } else if let Some(n) = token.strip_prefix('c').and_then(num) {
        make_cycle(n).map_err(|_| unknown())?
    } else if let Some(k) = token.strip_prefix('f').and_then(num) {
        make_friendship(k).map_err(|_| unknown())?
    } else {
        from_graph6(token).map_err(|_| unknown())?
    };
    if graph.size() == 0 {
        return Err(unknown());
    }
    Ok(Pattern::new(token, graph))
}

pub fn theorem_patterns() -> Vec<Pattern> {
    vec![parse_pattern("h33").unwrap(), parse_pattern("h43").unwrap()]
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_n: Option<usize>,
    pub workers: Workers,
    pub cache_dir: Option<PathBuf>,
    pub edge_limit: usize,
    pub tol: f64,
    pub timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_n: None,
            workers: Workers::default(),
            cache_dir: None,
            edge_limit: DEFAULT_EDGE_LIMIT,
            tol: DEFAULT_TOL,
            timing: false,
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration

fn check_size(m: usize, limit: usize) -> Result<(), SearchError> {
    if m == 0 {
        return Err(SearchError::NoEdges);
    }
    if m > limit {
        return Err(SearchError::OverLimit { m, limit });
    }
    Ok(())
}

/// One canonical representative per isomorphism class of connected graphs
/// with `m` edges and at most `max_n` vertices (default `m + 1`), sorted by
/// graph6.
pub fn enumerate_connected(m: usize, max_n: Option<usize>, workers: Workers) -> Result<Vec<Graph>, SearchError> {
    let options = SearchOptions { max_n, workers, ..SearchOptions::default() };
    enumerate_with(m, &options)
}

pub fn enumerate_with(m: usize, options: &SearchOptions) -> Result<Vec<Graph>, SearchError> {
    check_size(m, options.edge_limit)?;
    let max_n = options.max_n.unwrap_or(m + 1).min(m + 1);
    let mut level = vec![canonical_form(&Graph::from_edges(2, &[(0, 1)]).unwrap())];
    if max_n < 2 {
        level.clear();
    }
    for k in 2..=m {
        let file = level_file(options, k, max_n);
        if let Some(cached) = file.as_deref().map(read_cache).transpose()?.flatten() {
            level = cached;
            continue;
        }
        let children = par_map(&level, options.workers, |p| children_of(p, max_n));
        level = children.into_iter().flatten().collect();
        sort_by_graph6(&mut level);
        if let Some(path) = file {
            write_cache(&path, &level)?;
        }
    }
    Ok(level)
}

fn level_file(options: &SearchOptions, m: usize, max_n: usize) -> Option<PathBuf> {
    let dir = options.cache_dir.as_ref()?;
    Some(if max_n == m + 1 {
        dir.join(format!("connected-m{m}.g6"))
    } else {
        dir.join(format!("connected-m{m}-n{max_n}.g6"))
    })
}

fn sort_by_graph6(gs: &mut Vec<Graph>) {
    let mut keyed: Vec<(String, Graph)> = gs.drain(..).map(|g| (to_graph6(&g), g)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    gs.extend(keyed.into_iter().map(|(_, g)| g));
}

/// Canonical children of a canonical parent whose canonical parent is `p`.
fn children_of(p: &Graph, max_n: usize) -> Vec<Graph> {
    let n = p.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut consider = |child: Graph| {
        let c = canonical_form(&child);
        if !seen.contains(&c) && canonical_parent(&c).as_ref() == Some(p) {
            seen.insert(c.clone());
            out.push(c);
        }
    };
    for b in 0..n {
        for a in 0..b {
            if !p.has_edge(a, b) {
                let mut child = p.clone();
                child.add_edge(a, b).expect("in range");
                consider(child);
            }
        }
    }
    if n < max_n {
        for a in 0..n {
            let mut child = p.with_extra_vertex();
            child.add_edge(a, n).expect("in range");
            consider(child);
        }
    }
    out
}

/// The canonical form of `c` minus its canonical last edge, with isolated
/// vertices dropped. `c` must be canonical and connected.
pub fn canonical_parent(c: &Graph) -> Option<Graph> {
    let mut edges = c.edges();
    edges.sort_by(|x, y| (y.1, y.0).cmp(&(x.1, x.0)));
    for (a, b) in edges {
        let mut h = c.clone();
        h.remove_edge(a, b);
        if c.degree(a) == 1 || c.degree(b) == 1 {
            return Some(canonical_form(&h.without_isolated()));
        }
        if h.is_connected().unwrap_or(false) {
            return Some(canonical_form(&h));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Filtering and the extremal search

/// Whether `host` avoids `pattern`, using counting prescreens before the
/// backtracker.
pub fn avoids(host: &Graph, pattern: &Pattern, host_triangles: usize, induced: bool) -> bool {
    let p = &pattern.graph;
    if p.order() > host.order() || p.size() > host.size() || pattern.triangles > host_triangles {
        return true;
    }
    if !induced && pattern.name == "h33" {
        return !contains_bowtie(host);
    }
    matches!(contains_subgraph(host, p, induced), Ok(None))
}

pub fn avoids_all(host: &Graph, patterns: &[Pattern], induced: bool) -> bool {
    let triangles = host.triangle_count();
    patterns.iter().all(|p| avoids(host, p, triangles, induced))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchCounts {
    /// Isomorphism classes produced by the generator.
    pub enumerated: usize,
    /// Of those, connected with no isolated vertices.
    pub connected: usize,
    /// Survivors under the requested containment mode.
    pub free: usize,
    pub free_non_induced: usize,
    pub free_induced: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub m: usize,
    pub patterns: Vec<String>,
    pub induced: bool,
    pub max_n: usize,
    pub counts: SearchCounts,
    pub rho_max: f64,
    /// graph6 of every survivor attaining `rho_max`, sorted.
    pub argmax: Vec<String>,
    pub tie_tol: f64,
    pub bound: f64,
    pub bound_satisfied: bool,
    pub book_graph6: Option<String>,
    pub book_survives: bool,
    pub book_is_unique_argmax: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

fn survivors_file(options: &SearchOptions, m: usize, patterns: &[Pattern], induced: bool) -> Option<PathBuf> {
    let dir = options.cache_dir.as_ref()?;
    let names: Vec<&str> = patterns.iter().map(|p| p.name.as_str()).collect();
    let mode = if induced { "induced" } else { "noninduced" };
    let n = options.max_n.map(|n| format!("-n{n}")).unwrap_or_default();
    Some(dir.join(format!("survivors-m{m}{n}-{}-{mode}.g6", names.join("_"))))
}

fn survivors(
    level: &[Graph],
    m: usize,
    patterns: &[Pattern],
    induced: bool,
    options: &SearchOptions,
) -> Result<Vec<Graph>, SearchError> {
    let file = survivors_file(options, m, patterns, induced);
    if let Some(cached) = file.as_deref().map(read_cache).transpose()?.flatten() {
        return Ok(cached);
    }
    let keep = par_map(level, options.workers, |g| avoids_all(g, patterns, induced));
    let out: Vec<Graph> = level.iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g.clone()).collect();
    if let Some(path) = file {
        write_cache(&path, &out)?;
    }
    Ok(out)
}

/// Exhaustive spectral extremal search over connected `m`-edge graphs
/// avoiding every pattern.
pub fn extremal_search(
    m: usize,
    patterns: &[Pattern],
    induced: bool,
    options: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let level = enumerate_with(m, options)?;
    let connected: Vec<Graph> = level
        .iter()
        .filter(|g| g.is_connected().unwrap_or(false) && g.degree_stats().isolated_count == 0)
        .cloned()
        .collect();
    let free_non = survivors(&connected, m, patterns, false, options)?;
    let free_ind = survivors(&connected, m, patterns, true, options)?;
    let (free_non_induced, free_induced) = (free_non.len(), free_ind.len());
    let pool = if induced { free_ind } else { free_non };
    if pool.is_empty() {
        return Err(SearchError::NoSurvivors);
    }

    let rhos = par_map(&pool, options.workers, |g| spectral_radius(g, options.tol).map(|r| r.rho));
    let rhos: Vec<f64> = rhos.into_iter().collect::<Result<_, _>>()?;
    let top = rhos.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = exact_argmax(&pool, &rhos, top)?;
    let rho_max = argmax.iter().map(|&i| rhos[i]).fold(f64::NEG_INFINITY, f64::max);
    let mut argmax: Vec<String> = argmax.iter().map(|&i| to_graph6(&pool[i])).collect();
    argmax.sort();

    let bound = book_bound(m);
    let book = (m % 2 == 1 && m >= 3).then(|| to_graph6(&canonical_form(&make_book(m).unwrap())));
    let book_survives = book.as_ref().is_some_and(|b| pool.iter().any(|g| &to_graph6(g) == b));
    let book_is_unique_argmax = book.as_ref().is_some_and(|b| argmax.len() == 1 && &argmax[0] == b);
    Ok(SearchReport {
        m,
        patterns: patterns.iter().map(|p| p.name.clone()).collect(),
        induced,
        max_n: options.max_n.unwrap_or(m + 1).min(m + 1),
        counts: SearchCounts {
            enumerated: level.len(),
            connected: connected.len(),
            free: pool.len(),
            free_non_induced,
            free_induced,
        },
        rho_max,
        argmax,
        tie_tol: TIE_TOL,
        bound,
        bound_satisfied: rho_max <= bound + TIE_TOL,
        book_graph6: book,
        book_survives,
        book_is_unique_argmax,
        wall_time_secs: options.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Indices within `TIE_TOL` of `top`, narrowed to those whose spectral radius
/// equals the exact maximum among them.
fn exact_argmax(pool: &[Graph], rhos: &[f64], top: f64) -> Result<Vec<usize>, SearchError> {
    let near: Vec<usize> = (0..pool.len()).filter(|&i| rhos[i] >= top - TIE_TOL).collect();
    if near.len() == 1 {
        return Ok(near);
    }
    let polys: Vec<_> = near.iter().map(|&i| graph_char_poly(&pool[i])).collect();
    let mut best = 0;
    for j in 1..polys.len() {
        if compare_largest_roots(&polys[j], &polys[best])? == Ordering::Greater {
            best = j;
        }
    }
    let mut out = Vec::new();
    for (j, &i) in near.iter().enumerate() {
        if j == best
            || compare_largest_roots(&polys[j], &polys[best])? == Ordering::Equal
        {
            out.push(i);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinnerAnnotation {
    pub graph6: String,
    pub decomposition: Decomposition,
    pub neighbourhood: NeighbourhoodShape,
    pub pendant: CheckReport,
    pub ew: CheckReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub search: SearchReport,
    /// Whether `m` is large enough for the asymptotic argument; below that
    /// the annotations are informational.
    pub in_hypothesis: bool,
    pub winners: Vec<WinnerAnnotation>,
}

/// The search with the theorem's patterns, plus structural annotations of
/// every winner.
pub fn theorem_report(m: usize, options: &SearchOptions) -> Result<TheoremReport, SearchError> {
    if m % 2 == 0 {
        return Err(SearchError::EvenSize(m));
    }
    let search = extremal_search(m, &theorem_patterns(), false, options)?;
    let tol = 1e-8;
    let winners = search
        .argmax
        .iter()
        .map(|s| {
            let g = from_graph6(s).expect("own output");
            let decomposition = decompose_at_max(&g, tol)?;
            Ok(WinnerAnnotation {
                graph6: s.clone(),
                neighbourhood: neighbourhood_shape(&g, &decomposition),
                decomposition,
                pendant: check_pendant_lemma(&g, tol)?,
                ew: check_ew_bound(&g, tol)?,
            })
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(TheoremReport { search, in_hypothesis: m >= THEOREM_MIN_SIZE, winners })
}

// ---------------------------------------------------------------------------
// Cache files: one graph6 string per line, sorted.

fn cache_err(path: &Path, reason: impl ToString) -> SearchError {
    SearchError::Cache { path: path.to_path_buf(), reason: reason.to_string() }
}

fn read_cache(path: &Path) -> Result<Option<Vec<Graph>>, SearchError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(cache_err(path, e)),
    };
    let graphs = text
        .lines()
        .filter(|l| !l.is_empty())
        .map(from_graph6)
        .collect::<Result<Vec<_>, Graph6Error>>()
        .map_err(|e| cache_err(path, e))?;
    Ok(Some(graphs))
}

fn write_cache(path: &Path, graphs: &[Graph]) -> Result<(), SearchError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| cache_err(dir, e))?;
    }
    let mut lines: Vec<String> = graphs.iter().map(to_graph6).collect();
    lines.sort();
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| cache_err(&tmp, e))?;
    for l in &lines {
        writeln!(f, "{l}").map_err(|e| cache_err(&tmp, e))?;
    }
    drop(f);
    fs::rename(&tmp, path).map_err(|e| cache_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_path, make_star};
    use crate::subgraph::is_family_free;
    use std::collections::HashSet;

    fn seq() -> Workers {
        Workers(1)
    }

    /// Oracle: every labelled graph on `n <= m + 1` vertices with `m` edges,
    /// connected, deduplicated by canonical form.
    fn brute_force(m: usize) -> HashSet<Graph> {
        let mut out = HashSet::new();
        for n in 2..=m + 1 {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
            if pairs.len() < m {
                continue;
            }
            let mut pick: Vec<usize> = (0..m).collect();
            loop {
                let edges: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                if g.is_connected().unwrap() {
                    out.insert(canonical_form(&g));
                }
                // next combination
                let mut i = m;
                while i > 0 && pick[i - 1] == pairs.len() - m + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                pick[i - 1] += 1;
                for j in i..m {
                    pick[j] = pick[j - 1] + 1;
                }
            }
        }
        out
    }

    #[test]
    fn small_levels() {
        let k2 = enumerate_connected(1, None, seq()).unwrap();
        assert_eq!(k2, vec![canonical_form(&make_complete(2).unwrap())]);
        let three: HashSet<Graph> = enumerate_connected(3, None, seq()).unwrap().into_iter().collect();
        let expected: HashSet<Graph> = [make_complete(3).unwrap(), make_path(4).unwrap(), make_star(3).unwrap()]
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(three, expected);
        assert_eq!(enumerate_connected(4, None, seq()).unwrap().len(), 5);
    }

    #[test]
    fn matches_brute_force() {
        for m in 1..=6 {
            let got = enumerate_connected(m, None, seq()).unwrap();
            let set: HashSet<Graph> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates at m={m}");
            assert_eq!(set, brute_force(m), "m={m}");
        }
    }

    #[test]
    fn known_counts() {
        let counts = [1, 1, 3, 5, 12, 30, 79, 227, 710, 2322, 8071];
        for (i, &c) in counts.iter().enumerate() {
            assert_eq!(enumerate_connected(i + 1, None, Workers(4)).unwrap().len(), c, "m={}", i + 1);
        }
    }

    #[test]
    fn max_n_restricts() {
        // connected graphs with 6 edges on at most 4 vertices: only K_4
        let g = enumerate_connected(6, Some(4), seq()).unwrap();
        assert_eq!(g, vec![canonical_form(&make_complete(4).unwrap())]);
        let trees = enumerate_connected(5, None, seq()).unwrap().into_iter().filter(|g| g.order() == 6).count();
        assert_eq!(trees, 6);
    }

    #[test]
    fn limits() {
        assert!(matches!(enumerate_connected(0, None, seq()), Err(SearchError::NoEdges)));
        assert!(matches!(enumerate_connected(14, None, seq()), Err(SearchError::OverLimit { .. })));
        let opts = SearchOptions::default();
        assert!(matches!(theorem_report(8, &opts), Err(SearchError::EvenSize(8))));
    }

    #[test]
    fn prescreen_agrees_with_backtracker() {
        let patterns = theorem_patterns();
        let graphs: Vec<Graph> = enumerate_connected(8, None, Workers(4)).unwrap();
        let raw: Vec<Graph> = patterns.iter().map(|p| p.graph.clone()).collect();
        for g in &graphs {
            for induced in [false, true] {
                assert_eq!(avoids_all(g, &patterns, induced), is_family_free(g, &raw, induced));
            }
        }
    }

    #[test]
    fn patterns_parse() {
        assert_eq!(parse_pattern("h33").unwrap().graph.size(), 6);
        assert_eq!(parse_pattern("h43").unwrap().graph.size(), 7);
        assert_eq!(parse_pattern("k4").unwrap().graph.size(), 6);
        assert_eq!(parse_pattern("c5").unwrap().graph.size(), 5);
        assert_eq!(parse_pattern("f3").unwrap().graph.size(), 9);
        assert_eq!(parse_pattern("Bw").unwrap().graph.size(), 3);
        assert!(parse_pattern("zz").is_err());
    }

    #[test]
    fn search_nine_finds_book() {
        let opts = SearchOptions { workers: Workers(4), ..SearchOptions::default() };
        let r = extremal_search(9, &theorem_patterns(), false, &opts).unwrap();
        assert!(r.book_is_unique_argmax, "{r:#?}");
        assert!((r.rho_max - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(r.bound_satisfied);
        assert_eq!(r.counts.enumerated, 710);
        assert!(r.counts.free_induced >= r.counts.free_non_induced);
        assert!(r.wall_time_secs.is_none());
        let again = extremal_search(9, &theorem_patterns(), false, &SearchOptions { workers: seq(), ..opts }).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn five_edges_all_free() {
        let r = extremal_search(5, &theorem_patterns(), false, &SearchOptions::default()).unwrap();
        assert_eq!(r.counts.free, 12);
        let best = enumerate_connected(5, None, seq())
            .unwrap()
            .iter()
            .map(|g| spectral_radius(g, 1e-12).unwrap().rho)
            .fold(0.0, f64::max);
        assert!((r.rho_max - best).abs() < 1e-9);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let opts = SearchOptions { cache_dir: Some(dir.path().to_path_buf()), workers: seq(), ..Default::default() };
        let first = extremal_search(7, &theorem_patterns(), false, &opts).unwrap();
        assert!(dir.path().join("connected-m7.g6").exists());
        assert!(dir.path().join("survivors-m7-h33_h43-noninduced.g6").exists());
        let text = fs::read_to_string(dir.path().join("connected-m7.g6")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 79);
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
        let second = extremal_search(7, &theorem_patterns(), false, &opts).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn theorem_report_nine() {
        let r = theorem_report(9, &SearchOptions::default()).unwrap();
        assert!(!r.in_hypothesis);
        assert_eq!(r.winners.len(), 1);
        let w = &r.winners[0];
        assert_eq!(w.neighbourhood, NeighbourhoodShape::Star { edges: 4 });
        assert_eq!(w.decomposition.e_w, 0);
        assert!(w.pendant.passed() && w.ew.passed());
    }
}
