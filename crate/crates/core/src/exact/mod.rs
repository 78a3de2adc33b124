//! Exact arithmetic over the rationals: scalars, dense matrices, sparse
//! multivariate polynomials, binary forms and homogeneous interpolation.

mod binary;
mod fit;
mod matrix;
mod poly;
mod rational;

pub use binary::{binary_resultant, BinaryForm};
pub use fit::{evaluation_functional, fit_vanishing, interpolate_dense, substitution_matrix};
pub use matrix::{dot, Matrix};
pub use poly::{binomial, monomials, Exponents, MultiPoly};
pub use rational::{parse_rational, rat, ratio, Rational};
