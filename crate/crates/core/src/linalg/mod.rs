//! Exact dense linear algebra over GF(q).

mod commutant;
mod factor;
mod matrix;
mod poly;

pub use commutant::{commutant_dim, solve_commutant, SparseEchelon};
pub use factor::{factor_poly, factor_poly_seeded, Factorization};
pub use matrix::{spin, Matrix, Subspace};
pub use poly::Poly;
