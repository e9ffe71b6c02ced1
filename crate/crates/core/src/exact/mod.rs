//! Exact scalar arithmetic and linear algebra over ℚ and ℚ(i).

mod matrix;
mod scalar;

pub use matrix::{kernel_basis, rank_of, solve_linear, Echelon, ExactMatrix, LinearError, Vector};
pub use scalar::{parse_rational, rat, rational_to_string, GaussianRational, ParseScalarError, Rational, Scalar};
