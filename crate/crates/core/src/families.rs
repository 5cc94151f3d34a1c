//! Constructors for the named graph families.
//!
//! Vertex labels are deterministic. Constructors that return a
//! [`BlockLabeling`] list the blocks in the order of the corresponding
//! quotient matrix, so quotient rows line up with the closed forms used in
//! `verify`.

use serde::Serialize;
use thiserror::Error;

use crate::equitable::PartitionSpec;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
}

fn invalid(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameter { family, reason: reason.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub name: String,
    pub vertices: VertexSet,
}

/// Named, ordered, pairwise disjoint vertex blocks covering a graph.
///
/// A block may be empty (e.g. the pendant block `I` of `G(m, 0)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLabeling {
    pub blocks: Vec<Block>,
}

impl BlockLabeling {
    fn new(order: usize, named: &[(&str, Vec<usize>)]) -> Self {
        let blocks = named
            .iter()
            .map(|(name, vs)| Block { name: (*name).to_string(), vertices: VertexSet::from_slice(order, vs) })
            .collect();
        Self { blocks }
    }

    pub fn get(&self, name: &str) -> Option<&VertexSet> {
        self.blocks.iter().find(|b| b.name == name).map(|b| &b.vertices)
    }

    /// Non-empty blocks as a partition, plus how many empty blocks were dropped.
    pub fn to_partition(&self) -> (PartitionSpec, usize) {
        let nonempty: Vec<VertexSet> = self
            .blocks
            .iter()
            .filter(|b| !b.vertices.is_empty())
            .map(|b| b.vertices.clone())
            .collect();
        let dropped = self.blocks.len() - nonempty.len();
        (PartitionSpec::new(nonempty), dropped)
    }

    /// Blocks are disjoint and cover `0..order`.
    pub fn covers(&self, order: usize) -> bool {
        let mut seen = VertexSet::empty(order);
        for b in &self.blocks {
            if !b.vertices.is_disjoint(&seen) {
                return false;
            }
            seen.union_with(&b.vertices);
        }
        seen.len() == order && seen.iter().all(|v| v < order)
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let mut g = Graph::empty(n);
    for (a, b) in edges {
        g.add_edge(a, b).expect("constructor edges are in range");
    }
    g
}

/// `S_{n,k}`: `K_k` on `0..k` joined to the independent set `k..n`.
pub fn make_split_star(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if k < 1 || k > n {
        return Err(invalid("split_star", format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let clique = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b)));
    let spokes = (0..k).flat_map(|a| (k..n).map(move |b| (a, b)));
    Ok(build(n, clique.chain(spokes)))
}

/// The book graph `S_{(m+3)/2, 2}` with `m` edges.
pub fn make_book(m: usize) -> Result<Graph, FamilyError> {
    if m < 1 || m % 2 == 0 {
        return Err(invalid("book", format!("size must be odd and positive, got {m}")));
    }
    make_split_star(m.div_ceil(2) + 1, 2)
}

pub fn make_cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(invalid("cycle", format!("need n >= 3, got {n}")));
    }
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn make_complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(invalid("complete", "need n >= 1"));
    }
    make_split_star(n, n)
}

pub fn make_path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(invalid("path", "need n >= 1"));
    }
    Ok(build(n, (1..n).map(|i| (i - 1, i))))
}

/// Star `K_{1,m}` with centre 0.
pub fn make_star(edges: usize) -> Result<Graph, FamilyError> {
    if edges < 1 {
        return Err(invalid("star", "need at least one edge"));
    }
    Ok(build(edges + 1, (1..=edges).map(|i| (0, i))))
}

/// `H(l, 3)`: cycle `0..l` and triangle `{0, l, l+1}` sharing vertex 0.
pub fn make_h_cycle_triangle(cycle_len: usize) -> Result<Graph, FamilyError> {
    if cycle_len < 3 {
        return Err(invalid("h_cycle_triangle", format!("need cycle length >= 3, got {cycle_len}")));
    }
    let l = cycle_len;
    let cycle = (0..l).map(move |i| (i, (i + 1) % l));
    Ok(build(l + 2, cycle.chain([(0, l), (0, l + 1), (l, l + 1)])))
}

/// Friendship graph `F_k`: `k` triangles glued at vertex 0.
pub fn make_friendship(k: usize) -> Result<Graph, FamilyError> {
    if k < 1 {
        return Err(invalid("friendship", "need k >= 1"));
    }
    Ok(build(2 * k + 1, (0..k).flat_map(|i| [(0, 2 * i + 1), (0, 2 * i + 2), (2 * i + 1, 2 * i + 2)])))
}

/// `G(m, t)`: book graph of size `m - t` with `t` pendants at a spine vertex.
///
/// Blocks: `u*` (0), `u` (1), `T` (pages), `I` (pendants).
pub fn make_gmt(m: usize, t: usize) -> Result<(Graph, BlockLabeling), FamilyError> {
    if m <= t + 2 {
        return Err(invalid("gmt", format!("need m > t + 2, got m={m}, t={t}")));
    }
    if (m - t) % 2 == 0 {
        return Err(invalid("gmt", format!("m - t must be odd, got m={m}, t={t}")));
    }
    let pages = (m - t - 1) / 2;
    let n = 2 + pages + t;
    let page_ids: Vec<usize> = (2..2 + pages).collect();
    let pendant_ids: Vec<usize> = (2 + pages..n).collect();
    let edges = std::iter::once((0, 1))
        .chain(page_ids.iter().flat_map(|&p| [(0, p), (1, p)]))
        .chain(pendant_ids.iter().map(|&p| (0, p)));
    let g = build(n, edges);
    let labels = BlockLabeling::new(n, &[("u*", vec![0]), ("u", vec![1]), ("T", page_ids), ("I", pendant_ids)]);
    Ok((g, labels))
}

/// `K_4^m`: `K_4` with `m - 6` pendants at vertex 0.
///
/// Blocks: `u*` (0), `R` (1, 2, 3), `I` (pendants).
pub fn make_k4m(m: usize) -> Result<(Graph, BlockLabeling), FamilyError> {
    if m < 6 {
        return Err(invalid("k4m", format!("need m >= 6, got {m}")));
    }
    let n = m - 2;
    let pendants: Vec<usize> = (4..n).collect();
    let clique = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b)));
    let g = build(n, clique.chain(pendants.iter().map(|&p| (0, p))));
    let labels = BlockLabeling::new(n, &[("u*", vec![0]), ("R", vec![1, 2, 3]), ("I", pendants)]);
    Ok((g, labels))
}

/// The case-2 graph `H` with `|T| = |R| = t` and `|I| = m - 3t - 7`.
///
/// Labels: `u*`=0, `u`=1, `v`=2, `w`=3, then `R`, `I`, `T`, and `z` last.
/// `t = 1` gives `H_1`.
pub fn make_case2_h(m: usize, t: usize) -> Result<(Graph, BlockLabeling), FamilyError> {
    if t < 1 {
        return Err(invalid("case2h", "need t >= 1 (the T-empty variant is case2h2)"));
    }
    if m < 3 * t + 7 {
        return Err(invalid("case2h", format!("need m >= 3t + 7, got m={m}, t={t}")));
    }
    let free = m - 3 * t - 7;
    let r: Vec<usize> = (4..4 + t).collect();
    let i: Vec<usize> = (4 + t..4 + t + free).collect();
    let tt: Vec<usize> = (4 + t + free..4 + 2 * t + free).collect();
    let z = 4 + 2 * t + free;
    let n = z + 1;
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, z), (3, z)];
    edges.extend(r.iter().map(|&x| (0, x)));
    edges.extend(i.iter().map(|&x| (0, x)));
    edges.extend(tt.iter().map(|&x| (1, x)));
    edges.extend(r.iter().zip(&tt).map(|(&a, &b)| (a, b)));
    let g = build(n, edges);
    let labels = BlockLabeling::new(
        n,
        &[("u*", vec![0]), ("u", vec![1]), ("{v,w}", vec![2, 3]), ("R", r), ("I", i), ("T", tt), ("z", vec![z])],
    );
    Ok((g, labels))
}

/// The case-2 graph `H_2`: `v`, `w` share the neighbour `z` outside `N[u*]`.
///
/// Labels: `u*`=0, `u`=1, `v`=2, `w`=3, `z`=4, then `I`.
pub fn make_case2_h2(m: usize) -> Result<(Graph, BlockLabeling), FamilyError> {
    if m < 7 {
        return Err(invalid("case2h2", format!("need m >= 7, got {m}")));
    }
    let n = m - 2;
    let i: Vec<usize> = (5..n).collect();
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)];
    edges.extend(i.iter().map(|&x| (0, x)));
    let g = build(n, edges);
    let labels =
        BlockLabeling::new(n, &[("u*", vec![0]), ("u", vec![1]), ("{v,w}", vec![2, 3]), ("z", vec![4]), ("I", i)]);
    Ok((g, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    fn binom2(k: usize) -> usize {
        k * k.saturating_sub(1) / 2
    }

    #[test]
    fn split_star_examples() {
        let book = make_split_star(6, 2).unwrap();
        assert_eq!((book.order(), book.size()), (6, 9));
        assert_eq!(make_book(9).unwrap(), book);
        assert_eq!(make_split_star(5, 5).unwrap(), make_complete(5).unwrap());
        assert_eq!(make_split_star(5, 1).unwrap(), make_star(4).unwrap());
        assert!(make_split_star(3, 0).is_err());
        assert!(make_split_star(3, 4).is_err());
        for n in 1..12 {
            for k in 1..=n {
                let g = make_split_star(n, k).unwrap();
                assert_eq!(g.size(), binom2(k) + k * (n - k));
                assert!(g.is_well_formed());
            }
        }
    }

    #[test]
    fn basic_families() {
        assert_eq!(make_cycle(4).unwrap().size(), 4);
        assert!(make_cycle(2).is_err());
        let s = make_star(9).unwrap();
        assert_eq!((s.order(), s.size()), (10, 9));
        assert!(make_star(0).is_err());
        assert_eq!(make_complete(4).unwrap().size(), 6);
        assert!(make_book(8).is_err());
    }

    #[test]
    fn h_cycle_triangle_sizes() {
        for l in 3..12 {
            let g = make_h_cycle_triangle(l).unwrap();
            assert_eq!((g.order(), g.size()), (l + 2, l + 3));
        }
        assert!(make_h_cycle_triangle(2).is_err());
    }

    #[test]
    fn friendship() {
        assert_eq!(make_friendship(1).unwrap(), make_complete(3).unwrap());
        let f3 = make_friendship(3).unwrap();
        assert_eq!((f3.order(), f3.size()), (7, 9));
        assert_eq!(
            canonical_form(&make_friendship(2).unwrap()),
            canonical_form(&make_h_cycle_triangle(3).unwrap())
        );
        assert!(make_friendship(0).is_err());
    }

    #[test]
    fn gmt_examples() {
        let (g, _) = make_gmt(9, 0).unwrap();
        assert_eq!(g, make_book(9).unwrap());

        let (g, b) = make_gmt(9, 2).unwrap();
        assert_eq!((g.order(), g.size()), (7, 9));
        assert_eq!(b.get("T").unwrap().len(), 3);

        let (g, b) = make_gmt(11, 4).unwrap();
        assert_eq!(g.size(), 11);
        assert_eq!(b.get("T").unwrap().len(), 3);
        assert_eq!(b.get("I").unwrap().len(), 4);

        assert!(make_gmt(9, 1).is_err());
        assert!(make_gmt(5, 3).is_err());
        // odd t is accepted; the verify checks enforce evenness
        assert_eq!(make_gmt(10, 3).unwrap().0.size(), 10);
    }

    #[test]
    fn k4m_examples() {
        assert_eq!(make_k4m(6).unwrap().0, make_complete(4).unwrap());
        let (g, _) = make_k4m(9).unwrap();
        assert_eq!((g.order(), g.size()), (7, 9));
        let (_, b) = make_k4m(8).unwrap();
        let sizes: Vec<usize> = b.blocks.iter().map(|b| b.vertices.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert!(make_k4m(5).is_err());
    }

    #[test]
    fn case2_sizes() {
        let (g, b) = make_case2_h(16, 3).unwrap();
        assert_eq!(g.size(), 16);
        assert!(b.get("I").unwrap().is_empty());
        for m in 8..60 {
            for t in 1..=(m - 7) / 3 {
                let (g, b) = make_case2_h(m, t).unwrap();
                assert_eq!(g.size(), m, "m={m} t={t}");
                assert!(b.covers(g.order()));
                assert!(g.is_well_formed());
            }
        }
        assert!(make_case2_h(20, 0).is_err());
        assert!(make_case2_h(12, 2).is_err());

        let (g, b) = make_case2_h2(7).unwrap();
        assert_eq!((g.order(), g.size()), (5, 7));
        assert!(b.get("I").unwrap().is_empty());
        assert_eq!(make_case2_h2(9).unwrap().0.size(), 9);
        assert!(make_case2_h2(6).is_err());
    }

    #[test]
    fn labelings_cover() {
        for m in (5..40).step_by(2) {
            for t in (0..m - 2).step_by(2) {
                let (g, b) = make_gmt(m, t).unwrap();
                assert!(b.covers(g.order()));
                assert_eq!(g.size(), m);
            }
        }
        for m in 6..40 {
            let (g, b) = make_k4m(m).unwrap();
            assert!(b.covers(g.order()));
            assert_eq!(g.size(), m);
        }
    }
}
