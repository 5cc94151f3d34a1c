//! Canonical labelling by colour refinement plus individualisation.
//!
//! The search tree branches on the first non-singleton cell of the equitable
//! colouring. Branches are pruned when the candidate vertex is a twin of an
//! already explored one, or lies in the same orbit under automorphisms found
//! so far that fix the current individualisation sequence. The canonical
//! labelling is the leaf whose relabelled adjacency rows are lexicographically
//! largest.

use super::Graph;

/// Refines an ordered colouring to the coarsest equitable colouring below it.
///
/// Colours in the result are dense (`0..k`) and respect the input order:
/// if `colors[a] < colors[b]` then the refined colours satisfy the same.
pub fn refine_coloring(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut colors = normalize(colors);
    let mut k = colors.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let mut counts = vec![0u32; n * k];
        for v in 0..n {
            for u in g.neighbor_iter(v) {
                counts[v * k + colors[u]] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let key = |v: usize| (colors[v], &counts[v * k..(v + 1) * k]);
        order.sort_by(|&a, &b| key(a).cmp(&key(b)));
        let mut next = vec![0; n];
        let mut c = 0;
        for w in 1..n {
            if key(order[w]) != key(order[w - 1]) {
                c += 1;
            }
            next[order[w]] = c;
        }
        let new_k = if n == 0 { 0 } else { c + 1 };
        colors = next;
        if new_k == k {
            return colors;
        }
        k = new_k;
    }
}

fn normalize(colors: &[usize]) -> Vec<usize> {
    let mut distinct: Vec<usize> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).unwrap())
        .collect()
}

/// Canonical labelling as a permutation: old vertex `v` maps to `perm[v]`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut c = Canonizer { g, best: None, autos: Vec::new() };
    let start = refine_coloring(g, &vec![0; n]);
    let mut seq = Vec::new();
    c.search(start, &mut seq);
    c.best.expect("at least one leaf").1
}

/// Relabelling of `g` shared by every graph isomorphic to it.
pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

const MAX_STORED_AUTOS: usize = 128;

struct Canonizer<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Canonizer<'_> {
    fn search(&mut self, colors: Vec<usize>, seq: &mut Vec<usize>) {
        let n = self.g.order();
        let k = colors.iter().copied().max().unwrap() + 1;
        if k == n {
            self.leaf(colors);
            return;
        }
        let mut sizes = vec![0usize; k];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..k).find(|&c| sizes[c] > 1).unwrap();
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();

        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| self.are_twins(u, v)) {
                continue;
            }
            if !explored.is_empty() && self.same_orbit(seq, &explored, v) {
                continue;
            }
            let individualized: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| if c > target || (c == target && u != v) { c + 1 } else { c })
                .collect();
            let refined = refine_coloring(self.g, &individualized);
            seq.push(v);
            self.search(refined, seq);
            seq.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, perm: Vec<usize>) {
        let g = self.g;
        let n = g.order();
        let stride = g.stride();
        let mut key = vec![0u64; n * stride];
        for v in 0..n {
            let row = perm[v];
            for u in g.neighbor_iter(v) {
                let col = perm[u];
                key[row * stride + col / 64] |= 1 << (col % 64);
            }
        }
        match &self.best {
            None => self.best = Some((key, perm)),
            Some((best_key, best_perm)) => {
                if key > *best_key {
                    self.best = Some((key, perm));
                } else if key == *best_key && self.autos.len() < MAX_STORED_AUTOS {
                    let mut inv = vec![0; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let auto: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                    if auto.iter().enumerate().any(|(i, &a)| i != a) {
                        self.autos.push(auto);
                    }
                }
            }
        }
    }

    fn are_twins(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.g.row(a), self.g.row(b));
        let (wa, wb) = (a / 64, b / 64);
        let (ma, mb) = (1u64 << (a % 64), 1u64 << (b % 64));
        ra.iter().zip(rb).enumerate().all(|(i, (&x, &y))| {
            let mut x = x;
            let mut y = y;
            if i == wb {
                x &= !mb;
            }
            if i == wa {
                y &= !ma;
            }
            x == y
        })
    }

    /// Whether `v` shares an orbit with an explored vertex under the group
    /// generated by stored automorphisms that fix `seq` pointwise.
    fn same_orbit(&self, seq: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.autos {
            if seq.iter().all(|&s| auto[s] == s) {
                any = true;
                for (i, &a) in auto.iter().enumerate() {
                    let (ri, ra) = (find(&mut parent, i), find(&mut parent, a));
                    if ri != ra {
                        parent[ri] = ra;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::graph::to_graph6;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    /// Brute force: the lexicographically largest upper-triangle bit string over
    /// all n! relabellings.
    fn brute_canon(g: &Graph) -> Vec<bool> {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut inv = vec![0; n];
            for (v, &q) in p.iter().enumerate() {
                inv[q] = v;
            }
            let mut bits = Vec::with_capacity(n * n / 2);
            for j in 1..n {
                for i in 0..j {
                    bits.push(g.has_edge(inv[i], inv[j]));
                }
            }
            if best.as_ref().is_none_or(|b| bits > *b) {
                best = Some(bits);
            }
        });
        best.unwrap()
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn path_labelings_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn idempotent_and_separating() {
        let c4 = make_cycle(4).unwrap();
        let star = make_star(3).unwrap();
        let cc4 = canonical_form(&c4);
        assert_eq!(canonical_form(&cc4), cc4);
        assert_ne!(cc4, canonical_form(&star));
    }

    #[test]
    fn symmetric_families_are_fast_and_stable() {
        for g in [
            make_star(40).unwrap(),
            make_complete(30).unwrap(),
            make_split_star(30, 2).unwrap(),
            Graph::empty(50),
            make_cycle(40).unwrap(),
        ] {
            let c = canonical_form(&g);
            let perm: Vec<usize> = (0..g.order()).rev().collect();
            assert_eq!(canonical_form(&g.permuted(&perm)), c);
        }
    }

    #[test]
    fn invariant_under_random_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let n = rng.gen_range(1..=14);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let c = to_graph6(&canonical_form(&g));
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                assert_eq!(to_graph6(&canonical_form(&g.permuted(&perm))), c);
            }
        }
    }

    #[test]
    fn different_degree_sequences_differ() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.gen_range(2..=12);
            let a = random_graph(&mut rng, n, 0.4);
            let b = random_graph(&mut rng, n, 0.4);
            let mut da = a.degree_stats().degrees;
            let mut db = b.degree_stats().degrees;
            da.sort();
            db.sort();
            if da != db {
                assert_ne!(canonical_form(&a), canonical_form(&b));
                checked += 1;
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let graphs: Vec<Graph> = (0..150)
            .map(|_| {
                let n = rng.gen_range(1..=7);
                random_graph(&mut rng, n, 0.5)
            })
            .collect();
        let ours: Vec<Graph> = graphs.iter().map(canonical_form).collect();
        let brute: Vec<Vec<bool>> = graphs.iter().map(brute_canon).collect();
        for i in 0..graphs.len() {
            for j in 0..graphs.len() {
                if graphs[i].order() == graphs[j].order() {
                    assert_eq!(ours[i] == ours[j], brute[i] == brute[j], "{:?} vs {:?}", graphs[i], graphs[j]);
                }
            }
        }
    }

    #[test]
    fn refinement_separates_star_center() {
        let g = make_star(4).unwrap();
        let c = refine_coloring(&g, &[0; 5]);
        assert_eq!(c[0], 1);
        assert!(c[1..].iter().all(|&x| x == 0));
    }
}
