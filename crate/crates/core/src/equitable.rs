//! Equitable partitions, quotient matrices and the divisibility / spectral
//! transfer properties of their characteristic polynomials.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{refine_coloring, Graph, VertexSet};
use crate::spectral::{
    char_poly_exact, graph_char_poly, largest_real_root, spectral_radius, Polynomial, RootError, SpectralError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquitableError {
    #[error("partition block {0} is empty")]
    EmptyBlock(usize),
    #[error("vertex {0} appears in more than one block")]
    Overlap(usize),
    #[error("vertex {0} is not covered by the partition")]
    Uncovered(usize),
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("not equitable: vertex {vertex} has {found} neighbours in block {block}, expected {expected}")]
    NotEquitable { vertex: usize, block: usize, expected: usize, found: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Ordered vertex partition; quotient rows follow block order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSpec {
    pub blocks: Vec<VertexSet>,
}

impl PartitionSpec {
    pub fn new(blocks: Vec<VertexSet>) -> Self {
        Self { blocks }
    }

    pub fn from_lists(order: usize, lists: &[Vec<usize>]) -> Self {
        Self::new(lists.iter().map(|l| VertexSet::from_slice(order, l)).collect())
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn validate(&self, order: usize) -> Result<(), EquitableError> {
        let mut seen = VertexSet::empty(order);
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(EquitableError::EmptyBlock(i));
            }
            for v in b.iter() {
                if v >= order {
                    return Err(EquitableError::OutOfRange(v));
                }
                if seen.contains(v) {
                    return Err(EquitableError::Overlap(v));
                }
                seen.insert(v);
            }
        }
        match (0..order).find(|&v| !seen.contains(v)) {
            Some(v) => Err(EquitableError::Uncovered(v)),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl QuotientMatrix {
    pub fn to_int_matrix(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    pub fn char_poly(&self) -> Polynomial {
        char_poly_exact(&self.to_int_matrix()).expect("quotient matrices are square")
    }
}

/// Quotient matrix of `p`, or the first `(vertex, block)` whose neighbour
/// count differs from the first vertex of its block.
pub fn check_equitable(g: &Graph, p: &PartitionSpec) -> Result<QuotientMatrix, EquitableError> {
    p.validate(g.order())?;
    let k = p.len();
    let mut entries = vec![vec![0u64; k]; k];
    for (i, bi) in p.blocks.iter().enumerate() {
        let first = bi.iter().next().unwrap();
        for (j, bj) in p.blocks.iter().enumerate() {
            let expected = g.degree_into(first, bj);
            if let Some(vertex) = bi.iter().find(|&v| g.degree_into(v, bj) != expected) {
                return Err(EquitableError::NotEquitable {
                    vertex,
                    block: j,
                    expected,
                    found: g.degree_into(vertex, bj),
                });
            }
            entries[i][j] = expected as u64;
        }
    }
    Ok(QuotientMatrix { entries })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divisibility {
    pub graph_poly: Polynomial,
    pub quotient_poly: Polynomial,
    /// `graph_poly / quotient_poly` when the division is exact and integral.
    pub cofactor: Option<Polynomial>,
    pub divides: bool,
}

/// Exact rational division of the graph's characteristic polynomial by the
/// quotient's.
pub fn divisibility(g: &Graph, p: &PartitionSpec) -> Result<Divisibility, EquitableError> {
    let q = check_equitable(g, p)?;
    let graph_poly = graph_char_poly(g);
    let quotient_poly = q.char_poly();
    let (cof, rem) = graph_poly.to_rational().div_rem(&quotient_poly.to_rational());
    let divides = rem.is_zero();
    Ok(Divisibility {
        cofactor: if divides { cof.to_integer() } else { None },
        graph_poly,
        quotient_poly,
        divides,
    })
}

pub fn verify_divisibility(g: &Graph, p: &PartitionSpec) -> Result<bool, EquitableError> {
    Ok(divisibility(g, p)?.divides)
}

/// Largest quotient eigenvalue against the numeric spectral radius.
pub fn spectral_transfer_gap(g: &Graph, p: &PartitionSpec, tol: f64) -> Result<f64, EquitableError> {
    let q = check_equitable(g, p)?;
    if !g.is_connected().unwrap_or(false) {
        return Err(EquitableError::Disconnected);
    }
    let root = largest_real_root(&q.char_poly(), tol / 4.0)?;
    let rho = spectral_radius(g, tol / 4.0)?.rho;
    Ok((root - rho).abs())
}

pub fn verify_spectral_transfer(g: &Graph, p: &PartitionSpec, tol: f64) -> Result<bool, EquitableError> {
    Ok(spectral_transfer_gap(g, p, tol)? <= tol)
}

/// Coarsest equitable partition from colour refinement of the uniform
/// colouring. Used by tests; not part of the public surface.
#[doc(hidden)]
pub fn coarsest_equitable_partition(g: &Graph) -> PartitionSpec {
    let colors = refine_coloring(g, &vec![0; g.order()]);
    let k = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut blocks = vec![VertexSet::empty(g.order()); k];
    for (v, &c) in colors.iter().enumerate() {
        blocks[c].insert(v);
    }
    PartitionSpec::new(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn book_two_blocks() {
        let book = make_book(9).unwrap();
        let p = PartitionSpec::from_lists(6, &[vec![0, 1], vec![2, 3, 4, 5]]);
        assert_eq!(check_equitable(&book, &p).unwrap().entries, vec![vec![1, 4], vec![2, 0]]);
        let d = divisibility(&book, &p).unwrap();
        assert!(d.divides);
        assert_eq!(d.quotient_poly, Polynomial::from_i64_desc(&[1, -1, -8]));
        // spectrum {0,0,0,-1} plus the roots of x^2 - x - 8
        assert_eq!(d.cofactor.unwrap(), Polynomial::from_i64_desc(&[1, 1, 0, 0, 0]));
        assert!(verify_spectral_transfer(&book, &p, 1e-9).unwrap());
    }

    #[test]
    fn k4m_three_blocks() {
        let (g, b) = make_k4m(9).unwrap();
        let (p, dropped) = b.to_partition();
        assert_eq!(dropped, 0);
        let q = check_equitable(&g, &p).unwrap();
        assert_eq!(q.entries, vec![vec![0, 3, 3], vec![1, 2, 0], vec![1, 0, 0]]);
        assert!(verify_divisibility(&g, &p).unwrap());
        assert!(verify_spectral_transfer(&g, &p, 1e-9).unwrap());
    }

    #[test]
    fn not_equitable_reports_witness() {
        let c4 = make_cycle(4).unwrap();
        let p = PartitionSpec::from_lists(4, &[vec![0], vec![1, 2, 3]]);
        match check_equitable(&c4, &p) {
            Err(EquitableError::NotEquitable { vertex, block, .. }) => {
                assert_eq!((vertex, block), (2, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(verify_divisibility(&c4, &p), Err(EquitableError::NotEquitable { .. })));
    }

    #[test]
    fn malformed_partitions() {
        let g = make_cycle(4).unwrap();
        let check = |lists: &[Vec<usize>]| check_equitable(&g, &PartitionSpec::from_lists(8, lists));
        assert_eq!(check(&[vec![0, 1], vec![]]), Err(EquitableError::EmptyBlock(1)));
        assert_eq!(check(&[vec![0, 1], vec![1, 2, 3]]), Err(EquitableError::Overlap(1)));
        assert_eq!(check(&[vec![0, 1], vec![2]]), Err(EquitableError::Uncovered(3)));
        assert_eq!(check(&[vec![0, 1, 2, 3, 5]]), Err(EquitableError::OutOfRange(5)));
    }

    #[test]
    fn trivial_partitions() {
        for n in 2..8 {
            let k = make_complete(n).unwrap();
            let p = PartitionSpec::from_lists(n, &[(0..n).collect()]);
            let d = divisibility(&k, &p).unwrap();
            assert_eq!(d.quotient_poly, Polynomial::from_i64(&[-(n as i64 - 1), 1]));
            assert!(d.divides);
        }
        let c5 = make_cycle(5).unwrap();
        let p = PartitionSpec::from_lists(5, &[(0..5).collect()]);
        assert_eq!(check_equitable(&c5, &p).unwrap().entries, vec![vec![2]]);
        assert!(spectral_transfer_gap(&c5, &p, 1e-9).unwrap() <= 1e-9);
    }

    #[test]
    fn disconnected_transfer_is_an_error() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let p = PartitionSpec::from_lists(4, &[(0..4).collect()]);
        assert_eq!(verify_spectral_transfer(&g, &p, 1e-9), Err(EquitableError::Disconnected));
    }

    #[test]
    fn random_coarsest_partitions_divide() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let mut g = Graph::empty(n);
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.4) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            let p = coarsest_equitable_partition(&g);
            assert!(check_equitable(&g, &p).is_ok());
            assert!(verify_divisibility(&g, &p).unwrap());
        }
    }
}
