//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use spectral_extremal::graph::{canonical_form, Graph};

/// Containment by trying every injective vertex map.
pub fn brute_contains(host: &Graph, pattern: &Graph, induced: bool) -> bool {
    fn rec(host: &Graph, pattern: &Graph, induced: bool, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == pattern.order() {
            return true;
        }
        for v in 0..host.order() {
            if used[v] {
                continue;
            }
            let ok = (0..i).all(|j| {
                let p = pattern.has_edge(i, j);
                let h = host.has_edge(v, map[j]);
                if induced {
                    p == h
                } else {
                    !p || h
                }
            });
            if ok {
                map.push(v);
                used[v] = true;
                if rec(host, pattern, induced, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    pattern.order() <= host.order() && rec(host, pattern, induced, &mut Vec::new(), &mut vec![false; host.order()])
}

/// All graphs on exactly `n` vertices up to isomorphism, by adding one
/// vertex with every possible neighbourhood and deduplicating.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: HashSet<Graph> = [Graph::empty(0)].into_iter().collect();
    for k in 0..n {
        let mut next = HashSet::new();
        for g in &level {
            for mask in 0u32..(1 << k) {
                let mut h = g.with_extra_vertex();
                for v in 0..k {
                    if mask >> v & 1 == 1 {
                        h.add_edge(v, k).unwrap();
                    }
                }
                next.insert(canonical_form(&h));
            }
        }
        level = next;
    }
    let mut out: Vec<Graph> = level.into_iter().collect();
    out.sort_by_key(spectral_extremal::graph::to_graph6);
    out
}

/// Connected graphs with `m` edges up to isomorphism, from every labelled
/// edge set on at most `m + 1` vertices.
pub fn labelled_connected_classes(m: usize) -> HashSet<Graph> {
    let mut out = HashSet::new();
    for n in 2..=m + 1 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        if pairs.len() < m {
            continue;
        }
        let mut pick: Vec<usize> = (0..m).collect();
        loop {
            // every vertex must be covered, or the graph has fewer vertices
            let mut covered = vec![false; n];
            for &i in &pick {
                covered[pairs[i].0] = true;
                covered[pairs[i].1] = true;
            }
            if covered.iter().all(|&c| c) {
                let edges: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                if g.is_connected().unwrap() {
                    out.insert(canonical_form(&g));
                }
            }
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

/// Random connected graph: a random spanning tree plus independent extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for b in 0..n {
        for a in 0..b {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}
