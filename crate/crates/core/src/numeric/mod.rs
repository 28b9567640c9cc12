//! Floating-point building blocks: adaptive quadrature, least squares with
//! conditioning estimates, polynomial roots and a few special values.

pub mod lstsq;
pub mod quadrature;
pub mod roots;
pub mod zeta;
