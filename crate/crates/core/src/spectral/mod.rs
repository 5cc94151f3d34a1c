//! Spectral radius (numeric and exact) and polynomial machinery.

mod charpoly;
pub mod poly;
mod power;
mod roots;

pub use charpoly::{char_poly_exact, char_poly_i64, graph_char_poly, int_matrix, CharPolyError, IntMatrix};
pub use poly::{Polynomial, RatPoly};
pub use power::{
    book_bound, book_rho_closed_form, spectral_radius, spectral_radius_with_cap, SpectralError, SpectrumResult,
    DEFAULT_TOL, MAX_ITERATIONS,
};
pub use roots::{cauchy_bound, compare_largest_roots, largest_real_root, RootBracket, RootError};
