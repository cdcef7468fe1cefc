//! Exact coefficient arithmetic: rationals, Laurent polynomials in formal
//! parameters, truncated power series and fraction-free linear algebra.

mod linalg;
mod rat;
mod scalar;
mod series;

pub use linalg::{solve_linear, Echelon, FracVec, LinearSolution, Matrix, SparseVec};
pub(crate) use linalg::{sparse_add, sparse_axpy};
pub use rat::{binomial, factorial, int_pow, Rat};
pub(crate) use scalar::write_term;
pub use scalar::{Monomial, Params, Scalar, Var};
pub use series::{bernoulli_numbers, series_quotient, Series};
