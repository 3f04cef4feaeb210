//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: implemented for `f32` and `f64`.
///
/// Besides the arithmetic from `num_traits`, each scalar carries the
/// tolerances that the library uses for its internal validity checks, so
/// that an `f32` build does not reject values that are exact to single
/// precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Tolerance for exact algebraic identities (unit axes, unitarity).
    fn algebraic_tol() -> Self;

    /// Tolerance for checks on user-supplied data (normalization, cyclicity).
    fn input_tol() -> Self;

    /// Lossless conversion of a literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f32 {
    fn algebraic_tol() -> Self {
        1e-5
    }
    fn input_tol() -> Self {
        1e-4
    }
}

impl Real for f64 {
    fn algebraic_tol() -> Self {
        1e-12
    }
    fn input_tol() -> Self {
        1e-9
    }
}

/// Reduces an angle to the half-open interval `(-π, π]`.
pub fn wrap_phase<T: Real>(x: T) -> T {
    let two_pi = T::TAU();
    let mut r = x % two_pi;
    if r <= -T::PI() {
        r = r + two_pi;
    } else if r > T::PI() {
        r = r - two_pi;
    }
    r
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_positive<T: Real>(x: T) -> T {
    let two_pi = T::TAU();
    let r = x % two_pi;
    let r = if r < T::zero() { r + two_pi } else { r };
    // r + 2π can round up to exactly 2π for tiny negative r
    if r >= two_pi {
        T::zero()
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn phase_distance<T: Real>(a: T, b: T) -> T {
    wrap_phase(a - b).abs()
}
