//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, NumCast};

/// Floating point scalar the barcode and vectorization code is generic over.
///
/// Implemented for `f32` and `f64`. Filtration values, intervals and every
/// feature vector carry this type; parameters coming from configuration are
/// plain `f64` and are converted with [`Real::of`].
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumCast
    + NumAssign
    + Sum
    + Debug
    + Display
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal or parameter.
    fn of(x: f64) -> Self;

    /// Lossy conversion from a count.
    fn of_usize(n: usize) -> Self;

    fn as_f64(self) -> f64;

    /// Error function.
    fn erf(self) -> Self;

    /// Complementary error function, `1 - erf(x)` without cancellation.
    fn erfc(self) -> Self;
}

impl Real for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        n as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }

    #[inline]
    fn erf(self) -> Self {
        libm::erff(self)
    }

    #[inline]
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

impl Real for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        n as f64
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }

    #[inline]
    fn erf(self) -> Self {
        libm::erf(self)
    }

    #[inline]
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

/// Total order on non-NaN scalars; NaN compares equal to everything.
#[inline]
pub(crate) fn cmp<T: Real>(a: &T, b: &T) -> std::cmp::Ordering {
    a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal)
}
