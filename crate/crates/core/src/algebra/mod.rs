//! Exact arithmetic: rationals, Gaussian rationals, monomials, polynomials,
//! term orders and quasi-homogeneous weights.

mod gauss;
mod monomial;
mod order;
mod poly;
pub mod rational;
mod resultant;
mod upoly;
mod weights;

pub use gauss::GaussRational;
pub use monomial::{Monomial, Var, NVARS};
pub use order::TermOrder;
pub use poly::{cmp_monomials, MPoly, SignedDisplay};
pub use rational::{format_rational, frac, parse_rational, rat, rat_int, rational_to_f64, rem_euclid, Rational};
pub use resultant::{discriminant, resultant, translate};
pub use upoly::UPoly;
pub use weights::{quasi_homogeneous_weights, weighted_degree, Weights};
