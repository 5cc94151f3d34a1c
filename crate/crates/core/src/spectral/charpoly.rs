//! Exact characteristic polynomials by the Faddeev-LeVerrier recurrence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use super::Polynomial;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharPolyError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
}

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// `det(xI - M)` for a square integer matrix.
///
/// `M_0 = 0`, `M_k = M·M_{k-1} + c_{n-k+1}·I`, `c_{n-k} = -tr(M·M_k)/k`.
/// Every division is exact over the integers.
pub fn char_poly_exact(m: &[Vec<BigInt>]) -> Result<Polynomial, CharPolyError> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(CharPolyError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::from(1);
    // product = M · M_{k-1}
    let mut product: IntMatrix = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut mk = product;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        product = mat_mul(m, &mk);
        let trace: BigInt = (0..n).map(|i| &product[i][i]).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        c[n - k] = q;
    }
    Ok(Polynomial::new(c))
}

pub fn char_poly_i64(m: &[Vec<i64>]) -> Result<Polynomial, CharPolyError> {
    char_poly_exact(&int_matrix(m))
}

/// Characteristic polynomial of the adjacency matrix.
pub fn graph_char_poly(g: &Graph) -> Polynomial {
    char_poly_i64(&g.adjacency_matrix()).expect("adjacency matrix is square")
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}
