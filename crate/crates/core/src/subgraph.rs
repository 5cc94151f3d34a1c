//! Subgraph containment by backtracking over bit rows.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{iter_bits, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgraphError {
    #[error("pattern graph has no vertices")]
    EmptyPattern,
}

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks the embedding edge by edge.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph, induced: bool) -> bool {
        let k = pattern.order();
        if self.map.len() != k || self.map.iter().any(|&h| h >= host.order()) {
            return false;
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.map[a] == self.map[b] {
                    return false;
                }
                let he = host.has_edge(self.map[a], self.map[b]);
                let pe = pattern.has_edge(a, b);
                if pe && !he || induced && he != pe {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds an embedding of `pattern` into `host`, if one exists.
///
/// With `induced` set, pattern non-edges must map to host non-edges too.
pub fn contains_subgraph(host: &Graph, pattern: &Graph, induced: bool) -> Result<Option<Embedding>, SubgraphError> {
    let k = pattern.order();
    if k == 0 {
        return Err(SubgraphError::EmptyPattern);
    }
    if k > host.order() || pattern.size() > host.size() {
        return Ok(None);
    }
    let order = match_order(pattern);
    let stride = host.stride();
    let n = host.order();

    let host_deg: Vec<usize> = (0..n).map(|v| host.degree(v)).collect();
    let mut all = vec![0u64; stride];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }

    let mut state = Backtrack {
        host,
        pattern,
        induced,
        order: &order,
        host_deg,
        all,
        map: vec![usize::MAX; k],
        used: vec![0u64; stride],
    };
    if state.extend(0) {
        Ok(Some(Embedding { map: state.map }))
    } else {
        Ok(None)
    }
}

/// Greedy order: highest degree first, then the vertex with the most already
/// ordered neighbours.
fn match_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.order();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Backtrack<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    induced: bool,
    order: &'a [usize],
    host_deg: Vec<usize>,
    all: Vec<u64>,
    map: Vec<usize>,
    used: Vec<u64>,
}

impl Backtrack<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = self.all.clone();
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !u;
        }
        for &q in &self.order[..depth] {
            let row = self.host.row(self.map[q]);
            if self.pattern.has_edge(p, q) {
                for (c, r) in cand.iter_mut().zip(row) {
                    *c &= r;
                }
            } else if self.induced {
                for (c, r) in cand.iter_mut().zip(row) {
                    *c &= !r;
                }
            }
        }
        let need = self.pattern.degree(p);
        let candidates: Vec<usize> = iter_bits(&cand)
            .filter(|&h| self.host_deg[h] >= need)
            .collect();
        for h in candidates {
            self.map[p] = h;
            self.used[h / 64] |= 1 << (h % 64);
            if self.extend(depth + 1) {
                return true;
            }
            self.used[h / 64] &= !(1 << (h % 64));
        }
        self.map[p] = usize::MAX;
        false
    }
}

/// True iff no pattern embeds into `host`.
pub fn is_family_free(host: &Graph, patterns: &[Graph], induced: bool) -> bool {
    patterns
        .iter()
        .all(|p| matches!(contains_subgraph(host, p, induced), Ok(None)))
}

/// Triangle test by intersecting adjacency rows.
pub fn contains_triangle(g: &Graph) -> bool {
    g.edges()
        .into_iter()
        .any(|(a, b)| g.row(a).iter().zip(g.row(b)).any(|(x, y)| x & y != 0))
}

/// Bowtie (two triangles sharing one vertex) test: some vertex whose
/// neighbourhood spans two disjoint edges.
pub fn contains_bowtie(g: &Graph) -> bool {
    (0..g.order()).any(|v| {
        let nbrs: Vec<usize> = g.neighbor_iter(v).collect();
        let inner: Vec<(usize, usize)> = nbrs
            .iter()
            .flat_map(|&a| nbrs.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .filter(|&(a, b)| g.has_edge(a, b))
            .collect();
        inner.iter().enumerate().any(|(i, &(a, b))| {
            inner[i + 1..].iter().any(|&(c, d)| a != c && a != d && b != c && b != d)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Oracle: try every injective map.
    pub(crate) fn brute_contains(host: &Graph, pattern: &Graph, induced: bool) -> bool {
        fn go(host: &Graph, pattern: &Graph, induced: bool, map: &mut Vec<usize>) -> bool {
            let k = map.len();
            if k == pattern.order() {
                return Embedding { map: map.clone() }.is_valid(host, pattern, induced);
            }
            for h in 0..host.order() {
                if !map.contains(&h) {
                    map.push(h);
                    if go(host, pattern, induced, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        pattern.order() <= host.order() && go(host, pattern, induced, &mut Vec::new())
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn known_containments() {
        let bowtie = make_h_cycle_triangle(3).unwrap();
        let h43 = make_h_cycle_triangle(4).unwrap();
        let k3 = make_complete(3).unwrap();
        let book = make_split_star(6, 2).unwrap();
        let k5 = make_complete(5).unwrap();

        let e = contains_subgraph(&bowtie, &k3, false).unwrap().unwrap();
        assert!(e.is_valid(&bowtie, &k3, false));
        assert!(contains_subgraph(&book, &bowtie, false).unwrap().is_none());
        assert!(!brute_contains(&book, &bowtie, false));
        assert!(contains_subgraph(&book, &h43, false).unwrap().is_none());
        assert!(!brute_contains(&book, &h43, false));
        let e = contains_subgraph(&k5, &bowtie, false).unwrap().unwrap();
        assert!(e.is_valid(&k5, &bowtie, false));
        assert!(brute_contains(&k5, &bowtie, false));

        let pats = [bowtie.clone(), h43.clone()];
        assert!(is_family_free(&make_book(9).unwrap(), &pats, false));
        assert!(is_family_free(&make_k4m(9).unwrap().0, &pats, false));
        assert!(!is_family_free(&make_friendship(3).unwrap(), &[bowtie], false));

        assert_eq!(contains_subgraph(&k5, &Graph::empty(0), false), Err(SubgraphError::EmptyPattern));
        assert!(contains_subgraph(&k3, &k5, false).unwrap().is_none());
    }

    #[test]
    fn induced_is_stricter() {
        let k4 = make_complete(4).unwrap();
        let c4 = make_cycle(4).unwrap();
        assert!(contains_subgraph(&k4, &c4, false).unwrap().is_some());
        assert!(contains_subgraph(&k4, &c4, true).unwrap().is_none());
        let e = contains_subgraph(&c4, &c4, true).unwrap().unwrap();
        assert!(e.is_valid(&c4, &c4, true));
    }

    #[test]
    fn wide_hosts() {
        let (g, _) = make_k4m(150).unwrap();
        assert!(g.order() > 64);
        let k4 = make_complete(4).unwrap();
        let e = contains_subgraph(&g, &k4, false).unwrap().unwrap();
        assert!(e.is_valid(&g, &k4, false));
        assert!(contains_subgraph(&g, &make_h_cycle_triangle(3).unwrap(), false).unwrap().is_none());
    }

    #[test]
    fn fast_paths_agree_with_backtracker() {
        let k3 = make_complete(3).unwrap();
        let bowtie = make_h_cycle_triangle(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.7);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(contains_triangle(&g), contains_subgraph(&g, &k3, false).unwrap().is_some());
            assert_eq!(contains_bowtie(&g), contains_subgraph(&g, &bowtie, false).unwrap().is_some());
        }
    }

    #[test]
    fn monotone_under_edge_deletion() {
        let bowtie = make_h_cycle_triangle(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..300 {
            let n = rng.gen_range(5..=12);
            let mut g = random_graph(&mut rng, n, 0.35);
            if contains_subgraph(&g, &bowtie, false).unwrap().is_some() {
                continue;
            }
            while g.size() > 0 {
                let edges = g.edges();
                let (a, b) = edges[rng.gen_range(0..edges.len())];
                g.remove_edge(a, b);
                assert!(contains_subgraph(&g, &bowtie, false).unwrap().is_none());
            }
        }
    }
}
