//! Dense simple graphs stored as bit rows.
//!
//! Every row occupies `words` machine words, so a graph of order up to 64 uses
//! a single word per row. Larger graphs (the verification families at a few
//! hundred vertices) use the same layout with a wider stride.

mod canon;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, refine_coloring};
pub use graph6::{from_graph6, from_graph6_with_cap, to_graph6, Graph6Error};

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Default vertex cap for parsed graphs and for enumeration.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graph has no vertices")]
    Empty,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A set of vertex indices backed by a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(order: usize) -> Self {
        Self { bits: vec![0; words_for(order)] }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for v in 0..order {
            s.insert(v);
        }
        s
    }

    pub fn from_slice(order: usize, vertices: &[usize]) -> Self {
        let mut s = Self::empty(order);
        for &v in vertices {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(bits: &[u64]) -> Self {
        Self { bits: bits.to_vec() }
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        if v / 64 >= self.bits.len() {
            self.bits.resize(v / 64 + 1, 0);
        }
        self.bits[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.bits.get_mut(v / 64) {
            *w &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.get(v / 64).is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.bits.len() > self.bits.len() {
            self.bits.resize(other.bits.len(), 0);
        }
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
    }

    /// Largest element, if any.
    pub fn last(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// Undirected simple graph with adjacency bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Self { n, words, rows: vec![0; n * words], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph from a 0/1 adjacency matrix; the upper triangle decides.
    pub fn from_adjacency<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Self::empty(n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &a) in r.as_ref().iter().enumerate().skip(i + 1) {
                if a != 0 {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn stride(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.row(v))
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::Loop(a));
        }
        if self.has_edge(a, b) {
            return Ok(false);
        }
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
        self.m += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        if a >= self.n || b >= self.n || !self.has_edge(a, b) {
            return false;
        }
        self.rows[a * self.words + b / 64] &= !(1 << (b % 64));
        self.rows[b * self.words + a / 64] &= !(1 << (a % 64));
        self.m -= 1;
        true
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    /// Edges as `(a, b)` with `a < b`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for a in 0..self.n {
            for b in self.neighbor_iter(a).filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    /// Graph with one extra isolated vertex appended.
    pub fn with_extra_vertex(&self) -> Graph {
        let mut g = Graph::empty(self.n + 1);
        for (a, b) in self.edges() {
            g.add_edge(a, b).expect("in range");
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]).expect("permutation in range");
        }
        g
    }

    /// Subgraph induced by the vertices in `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for u in self.neighbor_iter(v) {
                let j = index[u];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        g
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Checks symmetry, loop-freeness and the cached edge count.
    pub fn is_well_formed(&self) -> bool {
        let mut total = 0;
        for a in 0..self.n {
            if self.has_edge(a, a) {
                return false;
            }
            // no stray bits past n
            for b in self.n..self.words * 64 {
                if self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1 {
                    return false;
                }
            }
            for b in self.neighbor_iter(a) {
                if !self.has_edge(b, a) {
                    return false;
                }
            }
            total += self.degree(a);
        }
        total == 2 * self.m
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(self.components().len() == 1)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbor_iter(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `s`; unreachable vertices get `None`.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for u in self.neighbor_iter(v) {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.degree_into(v, s)).sum::<usize>() / 2
    }

    /// Number of edges with one end in `s` and the other in `t` (disjoint sets).
    pub fn edges_between(&self, s: &VertexSet, t: &VertexSet) -> usize {
        s.iter().map(|v| self.degree_into(v, t)).sum()
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (a, b) in self.edges() {
            let common: usize = self
                .row(a)
                .iter()
                .zip(self.row(b))
                .map(|(x, y)| (x & y).count_ones() as usize)
                .sum();
            count += common;
        }
        count / 3
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for u in self.neighbor_iter(v) {
                    match side[u] {
                        None => {
                            side[u] = Some(!sv);
                            queue.push_back(u);
                        }
                        Some(su) if su == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Connected, bipartite, and every cross pair adjacent.
    pub fn is_complete_bipartite(&self) -> bool {
        if self.n < 2 || self.components().len() != 1 {
            return false;
        }
        match self.bipartition() {
            Some(side) => {
                let a = side.iter().filter(|&&s| s).count();
                a * (self.n - a) == self.m
            }
            None => false,
        }
    }

    /// Adjacency matrix as 0/1 integers.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.has_edge(a, b) as i64).collect())
            .collect()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeStats {
            min: degrees.iter().copied().min().unwrap_or(0),
            max: degrees.iter().copied().max().unwrap_or(0),
            isolated_count: degrees.iter().filter(|&&d| d == 0).count(),
            degrees,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.m, self.edges())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
    pub isolated_count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn connectivity() {
        assert!(make_cycle(5).unwrap().is_connected().unwrap());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected().unwrap());
        assert!(make_star(3).unwrap().is_connected().unwrap());
        assert_eq!(Graph::empty(0).is_connected(), Err(GraphError::Empty));
        assert!(Graph::empty(1).is_connected().unwrap());
    }

    #[test]
    fn degree_stats_examples() {
        let k4 = make_complete(4).unwrap().degree_stats();
        assert_eq!(k4.degrees, vec![3; 4]);
        assert_eq!(k4.isolated_count, 0);

        let star = make_star(5).unwrap().degree_stats();
        assert_eq!((star.max, star.min, star.isolated_count), (5, 1, 0));

        let k3_plus = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3_plus.degree_stats().isolated_count, 1);
    }

    #[test]
    fn edge_ops_keep_invariants() {
        let mut g = Graph::empty(70);
        g.add_edge(0, 69).unwrap();
        g.add_edge(65, 3).unwrap();
        assert!(!g.add_edge(69, 0).unwrap());
        assert_eq!(g.size(), 2);
        assert!(g.is_well_formed());
        assert!(g.remove_edge(0, 69));
        assert_eq!(g.size(), 1);
        assert!(g.is_well_formed());
        assert_eq!(g.add_edge(4, 4), Err(GraphError::Loop(4)));
        assert!(matches!(g.add_edge(0, 70), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn complete_bipartite_detection() {
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(k23.is_complete_bipartite());
        assert!(make_star(4).unwrap().is_complete_bipartite());
        assert!(make_cycle(4).unwrap().is_complete_bipartite());
        assert!(!make_cycle(6).unwrap().is_complete_bipartite());
        assert!(!make_cycle(5).unwrap().is_complete_bipartite());
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::empty(130);
        s.insert(3);
        s.insert(129);
        assert_eq!(s.len(), 2);
        assert_eq!(s.last(), Some(129));
        assert_eq!(s.to_vec(), vec![3, 129]);
        s.remove(129);
        assert_eq!(s.last(), Some(3));
    }
}
