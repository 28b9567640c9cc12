//! Local invariants of plane curve singularities and degenerating families.
//!
//! Exact code is generic over a coefficient [`scalar::Field`] (Gaussian
//! rationals by default); numeric code is generic over [`scalar::Real`].
//! The aliases below fix the usual concrete choices.

pub mod algebra;
pub mod asymfit;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod family;
pub mod io;
pub mod local_algebra;
pub mod monodromy;
pub mod newton_polygon;
pub mod numeric;
pub mod scalar;
pub mod weierstrass;

pub use error::{Error, Result};

/// Polynomial in `x, y, t` over `Q(i)`.
pub type Poly = algebra::MPoly<algebra::GaussRational>;
/// Polynomial in `x, y, t` over `Q`.
pub type RatPoly = algebra::MPoly<algebra::Rational>;
pub type ComplexD = num_complex::Complex<f64>;
pub type TorusDataD = elliptic::TorusData<f64>;
pub type QuillenSampleD = elliptic::QuillenSample<f64>;
pub type SamplesD = asymfit::Samples<f64>;
pub type FitResultD = asymfit::FitResult<f64>;
