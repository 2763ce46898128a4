use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type for every numeric routine in this crate.
///
/// `f64` is the primary instantiation (all CLI paths use it); `f32` works for
/// quick low-precision sweeps. Anything satisfying the bound gets a blanket
/// implementation.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// 2*pi as an exact doubling of the rounded pi constant.
pub(crate) fn two_pi<T: Real>() -> T {
    T::PI() + T::PI()
}

/// Euclidean remainder: result in [0, m], hitting m only when rounding pins a
/// tiny negative input against it. fmod itself is exact in IEEE arithmetic.
pub(crate) fn rem_euclid<T: Real>(x: T, m: T) -> T {
    let r = x % m;
    if r < T::zero() {
        r + m
    } else {
        r
    }
}

pub(crate) fn fromf<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal converts into every Real")
}

pub(crate) fn fromi<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("grid index converts into every Real")
}
