//! Closed-form calculus on polynomials in `tanh(αx)` and `sech(αx)`.
//!
//! Every potential, superpotential and deformation function of the Scarf II
//! family lives in this ring, and it is closed under differentiation:
//! `tanh' = α sech²`, `sech' = -α sech tanh`. Residual checks therefore never
//! need finite differences.

use num_complex::Complex;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{sech, Real};

/// `Σ c_ij tanh^i(αx) sech^j(αx)` with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SechTanhPoly<T> {
    alpha: T,
    terms: BTreeMap<(u32, u32), Complex<T>>,
}

impl<T: Real> SechTanhPoly<T> {
    pub fn zero(alpha: T) -> Self {
        Self { alpha, terms: BTreeMap::new() }
    }

    pub fn constant(alpha: T, c: Complex<T>) -> Self {
        Self::monomial(alpha, 0, 0, c)
    }

    pub fn monomial(alpha: T, tanh_pow: u32, sech_pow: u32, c: Complex<T>) -> Self {
        let mut p = Self::zero(alpha);
        p.push(tanh_pow, sech_pow, c);
        p
    }

    /// `a tanh(αx) + b sech(αx)`: the shape of every superpotential here.
    pub fn linear(alpha: T, a: Complex<T>, b: Complex<T>) -> Self {
        let mut p = Self::zero(alpha);
        p.push(1, 0, a);
        p.push(0, 1, b);
        p
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `tanh^i sech^j` as stored (no identity reduction).
    pub fn coefficient(&self, tanh_pow: u32, sech_pow: u32) -> Complex<T> {
        self.terms.get(&(tanh_pow, sech_pow)).copied().unwrap_or_default()
    }

    fn push(&mut self, i: u32, j: u32, c: Complex<T>) {
        let slot = self.terms.entry((i, j)).or_default();
        *slot = *slot + c;
        if *slot == Complex::default() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn scale(mut self, k: Complex<T>) -> Self {
        for c in self.terms.values_mut() {
            *c = *c * k;
        }
        self.terms.retain(|_, c| *c != Complex::default());
        self
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.alpha);
        let al = Complex::new(self.alpha, T::zero());
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                out.push(i - 1, j + 2, c * al * T::of(i as usize));
            }
            if j > 0 {
                out.push(i + 1, j, -(c * al * T::of(j as usize)));
            }
        }
        out
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        let y = self.alpha * x;
        let (t, s) = (y.tanh(), sech(y));
        self.terms.iter().fold(Complex::default(), |acc, (&(i, j), &c)| acc + c * (t.powi(i as i32) * s.powi(j as i32)))
    }

    /// Value and first three derivatives, all in closed form.
    pub fn differentiated(&self) -> Differentiated<T> {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        Differentiated { f: self.clone(), d1, d2, d3 }
    }

    fn same_alpha(&self, other: &Self) {
        assert!(self.alpha == other.alpha, "mixing polynomials with different alpha");
    }
}

impl<T: Real> Add for SechTanhPoly<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.same_alpha(&rhs);
        for ((i, j), c) in rhs.terms {
            self.push(i, j, c);
        }
        self
    }
}

impl<T: Real> Neg for SechTanhPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(Complex::new(-T::one(), T::zero()))
    }
}

impl<T: Real> Sub for SechTanhPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Mul for &SechTanhPoly<T> {
    type Output = SechTanhPoly<T>;
    fn mul(self, rhs: Self) -> SechTanhPoly<T> {
        self.same_alpha(rhs);
        let mut out = SechTanhPoly::zero(self.alpha);
        for (&(i, j), &c) in &self.terms {
            for (&(k, l), &d) in &rhs.terms {
                out.push(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl<T: Real> Mul for SechTanhPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// A function value with its first three derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T> {
    pub value: Complex<T>,
    pub d1: Complex<T>,
    pub d2: Complex<T>,
    pub d3: Complex<T>,
}

/// A profile `f(x)` whose derivatives up to third order are available.
pub trait Profile<T> {
    fn jet(&self, x: T) -> Jet<T>;
}

/// A polynomial together with its precomputed derivatives.
#[derive(Clone, Debug)]
pub struct Differentiated<T> {
    pub f: SechTanhPoly<T>,
    pub d1: SechTanhPoly<T>,
    pub d2: SechTanhPoly<T>,
    pub d3: SechTanhPoly<T>,
}

impl<T: Real> Profile<T> for Differentiated<T> {
    fn jet(&self, x: T) -> Jet<T> {
        Jet { value: self.f.eval(x), d1: self.d1.eval(x), d2: self.d2.eval(x), d3: self.d3.eval(x) }
    }
}

/// Adapter for profiles given as closures returning analytic jets.
pub struct FnProfile<F>(pub F);

impl<T, F: Fn(T) -> Jet<T>> Profile<T> for FnProfile<F> {
    fn jet(&self, x: T) -> Jet<T> {
        (self.0)(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn derivatives_match_central_differences() {
        let w = SechTanhPoly::linear(1.3, c(2.0, 0.5), c(-0.4, 1.0));
        let u = &w * &w + w.derivative();
        let du = u.differentiated();
        let h = 1e-4;
        for &x in &[-1.1, 0.0, 0.37, 2.5] {
            let fd = (u.eval(x + h) - u.eval(x - h)) / (2.0 * h);
            assert!((fd - du.d1.eval(x)).norm() < 1e-6);
            let fd3 = (du.d2.eval(x + h) - du.d2.eval(x - h)) / (2.0 * h);
            assert!((fd3 - du.d3.eval(x)).norm() < 1e-5);
        }
    }

    #[test]
    fn tanh_squared_plus_sech_squared_is_one() {
        let al = 0.7;
        let t = SechTanhPoly::monomial(al, 1, 0, c(1.0, 0.0));
        let s = SechTanhPoly::monomial(al, 0, 1, c(1.0, 0.0));
        let one = &t * &t + &s * &s;
        for &x in &[-3.0, 0.2, 9.0] {
            assert!((one.eval(x) - c(1.0, 0.0)).norm() < 1e-14);
        }
        // the identity is not applied symbolically, but derivatives still vanish
        assert!(one.derivative().eval(0.4).norm() < 1e-14);
    }

    #[test]
    fn arithmetic_drops_cancelled_terms() {
        let p = SechTanhPoly::linear(1.0, c(1.0, 0.0), c(0.0, 2.0));
        assert!((p.clone() - p).is_zero());
    }
}
