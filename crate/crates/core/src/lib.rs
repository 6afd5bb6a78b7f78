//! Antisymmetric and symmetric multivariate cosine functions, the sixteen
//! discrete cosine transforms built on them, the four families of
//! Chebyshev-like polynomials and the associated cubature rules.
//!
//! Exact quantities (labels, grid points, weights, polynomial coefficients)
//! are kept as exact rationals; floating point only appears when kernels are
//! evaluated.

pub mod cubature;
pub mod error;
pub mod grids;
pub mod kernels;
pub mod poly;
pub mod sum;
pub mod symmetry;
pub mod transforms;

pub use error::{Error, Result};

/// Arbitrary precision rational used for all exact quantities.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `p/q`.
pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
