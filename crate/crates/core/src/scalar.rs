//! Scalar abstraction. Every closed form in the crate is written against
//! [`Real`], so `f32` and `f64` share one implementation.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar usable throughout the crate: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal must be representable")
    }

    #[inline]
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("integer must be representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub(crate) fn sech<T: Real>(y: T) -> T {
    T::one() / y.cosh()
}

/// `ln(sech y)` without overflow for large `|y|`.
#[inline]
pub(crate) fn ln_sech<T: Real>(y: T) -> T {
    let a = y.abs();
    T::LN_2() - a - (-(a + a)).exp().ln_1p()
}

/// Gudermannian function `atan(sinh y)`.
#[inline]
pub(crate) fn gudermannian<T: Real>(y: T) -> T {
    y.sinh().atan()
}

#[inline]
pub(crate) fn i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Ordering by real part, then imaginary part.
pub(crate) fn cmp_re_im<T: Real>(a: &Complex<T>, b: &Complex<T>) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}
