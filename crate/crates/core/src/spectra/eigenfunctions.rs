//! Closed-form eigenfunctions of the PT-broken line and at spectral
//! singularities. All are unnormalized.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use super::jacobi::{jacobi, JacobiArgs};
use crate::error::{Result, ScarfError};
use crate::field::{uniform_grid, FieldSample};
use crate::params::{f, ScarfParams, Sign, TOL_LINE};
use crate::scalar::{gudermannian, ln_sech, Real};

/// `(sech y)^p · exp(q · gd(y)) · P_n^{(a,b)}(i sinh y)` with `y = αx`.
fn jacobi_wave<T: Real>(
    alpha: T,
    x: T,
    n: usize,
    power: Complex<T>,
    phase: Complex<T>,
    a: Complex<T>,
    b: Complex<T>,
) -> Complex<T> {
    let y = alpha * x;
    let envelope = (power * ln_sech(y) + phase * gudermannian(y)).exp();
    let z = Complex::new(T::zero(), y.sinh());
    envelope * jacobi(&JacobiArgs { n, a, b, z })
}

/// `ψ_n^±` on the PT line `A = B - α/2`:
/// `(sech αx)^((A±iC)/α) · exp[(-(i/α)(A+α/2) ∓ C/α) gd(αx)] ·
/// P_n^{(∓2iC/α, -2A/α-1)}(i sinh αx)`.
///
/// It carries energy [`super::eigenfunction_energy`]`(p, n, sign)`.
pub fn eigenfunction_broken<T: Real>(p: &ScarfParams<T>, n: usize, sign: Sign, x: T) -> Result<Complex<T>> {
    p.require_pt_line()?;
    let sg: T = sign.factor();
    let al = p.alpha;
    let two = T::lit(2.0);
    let power = Complex::new(p.a, sg * p.c) / al;
    let phase = Complex::new(-sg * p.c / al, -(p.a + al / two) / al);
    let ja = Complex::new(T::zero(), -sg * two * p.c / al);
    let jb = Complex::new(-two * p.a / al - T::one(), T::zero());
    Ok(jacobi_wave(al, x, n, power, phase, ja, jb))
}

/// Degenerate eigenfunction at the spectral singularity `A = nα`:
/// `(sech αx)^(n ± iC/α) · exp[(-i(n+1/2) ∓ C/α) gd(αx)] ·
/// P_n^{(∓2iC/α, -2n-1)}(i sinh αx)`. Energy `C²`.
pub fn eigenfunction_ss<T: Real>(p: &ScarfParams<T>, n: usize, sign: Sign, x: T) -> Result<Complex<T>> {
    let nn = T::of(n);
    if (p.a - nn * p.alpha).abs() > T::lit(TOL_LINE) {
        return Err(ScarfError::NotSpectralSingularity { a: f(p.a), n });
    }
    let sg: T = sign.factor();
    let al = p.alpha;
    let two = T::lit(2.0);
    let power = Complex::new(nn, sg * p.c / al);
    let phase = Complex::new(-sg * p.c / al, -(nn + T::lit(0.5)));
    let ja = Complex::new(T::zero(), -sg * two * p.c / al);
    let jb = Complex::new(-two * nn - T::one(), T::zero());
    Ok(jacobi_wave(al, x, n, power, phase, ja, jb))
}

/// Uses the spectral-singularity form when `A = nα` within tolerance, the
/// general PT-line form otherwise.
pub fn eigenfunction<T: Real>(p: &ScarfParams<T>, n: usize, sign: Sign, x: T) -> Result<Complex<T>> {
    p.require_pt_line()?;
    if (p.a - T::of(n) * p.alpha).abs() <= T::lit(TOL_LINE) {
        eigenfunction_ss(p, n, sign, x)
    } else {
        eigenfunction_broken(p, n, sign, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalize {
    None,
    /// Rescale so that `max|ψ| = 1`.
    Sup,
}

/// Samples [`eigenfunction`] on a uniform grid. Points are evaluated in
/// parallel and concatenated in grid order.
pub fn sample_eigenfunction<T: Real>(
    p: &ScarfParams<T>,
    n: usize,
    sign: Sign,
    xmin: T,
    xmax: T,
    points: usize,
    normalize: Normalize,
) -> Result<FieldSample<T>> {
    p.require_pt_line()?;
    let xs = uniform_grid(xmin, xmax, points)?;
    let values = xs.par_iter().map(|&x| eigenfunction(p, n, sign, x)).collect::<Result<Vec<_>>>()?;
    let sample = FieldSample::new(xs, values)?;
    Ok(match normalize {
        Normalize::None => sample,
        Normalize::Sup => sample.sup_normalized(),
    })
}
