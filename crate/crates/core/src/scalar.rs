//! Floating-point scalar abstraction shared by all geometric code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the geometry is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// Converts a count or index into this scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Wraps an angle into `[0, π)`.
pub fn normalize_half_turn<T: Scalar>(angle: T) -> T {
    let pi = T::PI();
    let mut a = angle % pi;
    if a < T::zero() {
        a = a + pi;
    }
    // `a + pi` can round up to exactly pi for tiny negative inputs.
    if a >= pi {
        a = a - pi;
    }
    a
}

/// Smallest absolute difference between two undirected angles (period π).
pub fn half_turn_distance<T: Scalar>(a: T, b: T) -> T {
    let d = normalize_half_turn(a - b);
    d.min(T::PI() - d)
}
