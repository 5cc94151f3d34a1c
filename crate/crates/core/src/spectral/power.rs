use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("power iteration did not reach tolerance after {} iterations (residual {})", .0.iterations, .0.residual)]
    NotConverged(Box<SpectrumResult>),
    #[error("book graph size must be odd and at least 3, got {0}")]
    BadBookSize(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub rho: f64,
    /// Unit (Euclidean) Perron vector of the component attaining `rho`,
    /// zero elsewhere.
    pub perron: Vec<f64>,
    pub iterations: usize,
    /// `max_i |(A x)_i - rho x_i|`.
    pub residual: f64,
}

/// Spectral radius by power iteration on `A + I`, component by component.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectrumResult, SpectralError> {
    spectral_radius_with_cap(g, tol, MAX_ITERATIONS)
}

pub fn spectral_radius_with_cap(g: &Graph, tol: f64, cap: usize) -> Result<SpectrumResult, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::Empty);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let mut best: Option<(Vec<usize>, ComponentRun)> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let run = component_power(g, &comp, tol, cap);
        iterations += run.iterations;
        if best.as_ref().is_none_or(|(_, b)| run.rho > b.rho) {
            best = Some((comp, run));
        }
    }
    let (comp, run) = best.unwrap();
    let mut perron = vec![0.0; g.order()];
    for (&v, &x) in comp.iter().zip(&run.vector) {
        perron[v] = x;
    }
    let result = SpectrumResult { rho: run.rho, perron, iterations, residual: run.residual };
    if run.converged {
        Ok(result)
    } else {
        Err(SpectralError::NotConverged(Box::new(result)))
    }
}

struct ComponentRun {
    rho: f64,
    vector: Vec<f64>,
    iterations: usize,
    residual: f64,
    converged: bool,
}

fn component_power(g: &Graph, comp: &[usize], tol: f64, cap: usize) -> ComponentRun {
    let k = comp.len();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| g.neighbor_iter(v).map(|u| local[u]).collect())
        .collect();

    let apply = |x: &[f64], out: &mut [f64]| {
        for (i, nbrs) in adj.iter().enumerate() {
            out[i] = nbrs.iter().map(|&j| x[j]).sum();
        }
    };

    let mut x = vec![1.0 / (k as f64).sqrt(); k];
    let mut ax = vec![0.0; k];
    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    for it in 0..=cap {
        apply(&x, &mut ax);
        rho = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - rho * xi).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return ComponentRun { rho, vector: x, iterations: it, residual, converged: true };
        }
        // x <- (A + I) x, normalised
        let norm = ax.iter().zip(&x).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt();
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi = (*xi + axi) / norm;
        }
    }
    ComponentRun { rho, vector: x, iterations: cap, residual, converged: false }
}

/// `(1 + sqrt(4m - 3)) / 2`, the spectral radius of the book graph with `m` edges.
pub fn book_rho_closed_form(m: usize) -> Result<f64, SpectralError> {
    if m < 3 || m % 2 == 0 {
        return Err(SpectralError::BadBookSize(m));
    }
    Ok(book_bound(m))
}

/// `(1 + sqrt(4m - 3)) / 2` for any `m >= 1`, without the parity check.
pub fn book_bound(m: usize) -> f64 {
    (1.0 + ((4 * m - 3) as f64).sqrt()) / 2.0
}
