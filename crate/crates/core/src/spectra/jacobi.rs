//! Jacobi polynomials with arbitrary complex parameters.

use num_complex::Complex;
use serde::Serialize;
use std::ops::{Add, Mul, Sub};
use twofloat::TwoFloat;

use crate::params::f;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobiArgs<T> {
    pub n: usize,
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub z: Complex<T>,
}

/// Arithmetic needed by [`jacobi_sum`]: a ring with exact embedding of small
/// integers and division by them.
pub trait JacobiScalar: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_usize(k: usize) -> Self;
    fn div_usize(self, k: usize) -> Self;
}

impl<T: Real> JacobiScalar for Complex<T> {
    fn from_usize(k: usize) -> Self {
        Complex::new(T::of(k), T::zero())
    }

    fn div_usize(self, k: usize) -> Self {
        self / T::of(k)
    }
}

impl JacobiScalar for Complex<TwoFloat> {
    fn from_usize(k: usize) -> Self {
        Complex::new(TwoFloat::from(k as f64), TwoFloat::from(0.0))
    }

    fn div_usize(self, k: usize) -> Self {
        // double-double divided by a double is exact to working precision
        let d = k as f64;
        Complex::new(self.re / d, self.im / d)
    }
}

/// `P_n^{(a,b)}(z)` from [`jacobi_sum`].
///
/// The sum cancels heavily for large parameters, so it is carried in
/// double-double arithmetic and rounded once at the end.
pub fn jacobi<T: Real>(args: &JacobiArgs<T>) -> Complex<T> {
    let wide = |z: Complex<T>| Complex::new(TwoFloat::from(f(z.re)), TwoFloat::from(f(z.im)));
    let v = jacobi_sum(args.n, wide(args.a), wide(args.b), wide(args.z));
    Complex::new(T::lit(f64::from(v.re)), T::lit(f64::from(v.im)))
}

/// Generalized binomial coefficient `C(w, k)` in product form.
fn binomial<F: JacobiScalar>(w: &F, k: usize) -> F {
    let mut out = F::from_usize(1);
    for j in 1..=k {
        out = (out * (w.clone() - F::from_usize(k - j))).div_usize(j);
    }
    out
}

/// Terminating double-binomial sum
/// `Σ_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^(n-s)`.
///
/// Gamma-free, so negative-integer `b` (spectral singularities) stays finite.
pub fn jacobi_sum<F: JacobiScalar>(n: usize, a: F, b: F, z: F) -> F {
    let one = F::from_usize(1);
    let na = F::from_usize(n) + a;
    let nb = F::from_usize(n) + b;
    let zm = (z.clone() - one.clone()).div_usize(2);
    let zp = (z + one.clone()).div_usize(2);

    let mut zm_pow = vec![one.clone(); n + 1];
    let mut zp_pow = vec![one; n + 1];
    for s in 1..=n {
        zm_pow[s] = zm_pow[s - 1].clone() * zm.clone();
        zp_pow[s] = zp_pow[s - 1].clone() * zp.clone();
    }
    let mut total = F::from_usize(0);
    for s in 0..=n {
        let term = binomial(&na, n - s) * binomial(&nb, s) * zm_pow[s].clone() * zp_pow[n - s].clone();
        total = total + term;
    }
    total
}
