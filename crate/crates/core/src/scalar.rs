//! Scalar abstractions.
//!
//! Exact algorithms are generic over a coefficient [`Field`]; floating-point
//! pipelines are generic over [`Real`] (implemented for `f32` and `f64`).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};

use crate::algebra::Rational;

/// Floating-point scalar used by the numeric modules.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; panics only for values the type cannot hold at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::infinity)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact coefficient field for polynomial arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds a rational number.
    fn from_rational(q: Rational) -> Self;

    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// The element as a rational number, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Real and imaginary parts as floating-point values.
    fn to_complex_f64(&self) -> (f64, f64);
}
