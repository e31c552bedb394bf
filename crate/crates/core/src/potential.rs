//! Potentials and superpotentials of the complex Scarf II family.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, ScarfError};
use crate::hyperbolic::SechTanhPoly;
use crate::params::{Branch, ScarfParams, Sign};
use crate::scalar::{i, re, sech, Real};

/// The PT-symmetric potential obtained at `C = 0`:
/// `-[A(A+α) + B²] sech²(αx) + iB(2A+α) sech(αx) tanh(αx)`.
///
/// `p.c` is ignored.
pub fn potential_pt<T: Real>(p: &ScarfParams<T>, x: T) -> Complex<T> {
    let y = p.alpha * x;
    let (s, t) = (sech(y), y.tanh());
    let two = T::lit(2.0);
    Complex::new(-(p.a * (p.a + p.alpha) + p.b * p.b) * s * s, p.b * (two * p.a + p.alpha) * s * t)
}

/// The general two-term potential generated by `W±` for arbitrary
/// `(A, B, C)`, transcribed term by term:
/// `-[(A±iC)(A±iC+α) - (±C+iB)²] sech² - i(±iC - B)[2(A±iC) + α] sech tanh`.
pub fn potential_general<T: Real>(p: &ScarfParams<T>, sign: Sign, x: T) -> Complex<T> {
    let sg: T = sign.factor();
    let y = p.alpha * x;
    let (s, t) = (sech(y), y.tanh());
    let a = Complex::new(p.a, sg * p.c);
    let b = Complex::new(sg * p.c, p.b);
    let first = -(a * (a + p.alpha) - b * b) * (s * s);
    let second = -i::<T>() * (i::<T>() * (sg * p.c) - p.b) * (a * T::lit(2.0) + p.alpha) * (s * t);
    first + second
}

pub fn potential_pt_poly<T: Real>(p: &ScarfParams<T>) -> SechTanhPoly<T> {
    let two = T::lit(2.0);
    SechTanhPoly::monomial(p.alpha, 0, 2, re(-(p.a * (p.a + p.alpha) + p.b * p.b)))
        + SechTanhPoly::monomial(p.alpha, 1, 1, Complex::new(T::zero(), p.b * (two * p.a + p.alpha)))
}

pub fn potential_general_poly<T: Real>(p: &ScarfParams<T>, sign: Sign) -> SechTanhPoly<T> {
    let sg: T = sign.factor();
    let a = Complex::new(p.a, sg * p.c);
    let b = Complex::new(sg * p.c, p.b);
    partner_from_coefficients(p.alpha, a, b, Sign::Minus)
}

/// Coefficients `(a, b)` of `W = a tanh(αx) + b sech(αx)` for the requested
/// branch.
///
/// `PlusPt`/`MinusPt` exist only on the PT line `A = B - α/2` with `C ≠ 0`.
pub fn superpotential_coefficients<T: Real>(p: &ScarfParams<T>, branch: Branch) -> Result<(Complex<T>, Complex<T>)> {
    let half = p.alpha / T::lit(2.0);
    match branch {
        Branch::One => Ok((re(p.a), Complex::new(T::zero(), p.b))),
        Branch::Two => Ok((re(p.b - half), Complex::new(T::zero(), p.a + half))),
        Branch::PlusPt | Branch::MinusPt => {
            if p.c == T::zero() {
                return Err(ScarfError::BranchUnavailable {
                    branch: branch.to_string(),
                    reason: "requires C != 0".into(),
                });
            }
            if !p.is_on_pt_line() {
                return Err(ScarfError::BranchUnavailable {
                    branch: branch.to_string(),
                    reason: format!("requires A = B - alpha/2 (offset {:e})", crate::params::f(p.exceptional_offset())),
                });
            }
            let sg: T = if branch == Branch::PlusPt { T::one() } else { -T::one() };
            Ok((Complex::new(p.a, sg * p.c), Complex::new(sg * p.c, p.a + half)))
        }
    }
}

pub fn superpotential<T: Real>(p: &ScarfParams<T>, branch: Branch, x: T) -> Result<Complex<T>> {
    let (a, b) = superpotential_coefficients(p, branch)?;
    let y = p.alpha * x;
    Ok(a * y.tanh() + b * sech(y))
}

/// `dW/dx` in closed form.
pub fn superpotential_derivative<T: Real>(p: &ScarfParams<T>, branch: Branch, x: T) -> Result<Complex<T>> {
    let (a, b) = superpotential_coefficients(p, branch)?;
    let y = p.alpha * x;
    let (s, t) = (sech(y), y.tanh());
    Ok((a * (s * s) - b * (s * t)) * p.alpha)
}

pub fn superpotential_poly<T: Real>(p: &ScarfParams<T>, branch: Branch) -> Result<SechTanhPoly<T>> {
    let (a, b) = superpotential_coefficients(p, branch)?;
    Ok(SechTanhPoly::linear(p.alpha, a, b))
}

/// Factorization energy `-W(+∞)²`: the constant separating `W² - W'` from
/// the potential that vanishes at infinity.
pub fn factorization_energy<T: Real>(p: &ScarfParams<T>, branch: Branch) -> Result<Complex<T>> {
    let (a, _) = superpotential_coefficients(p, branch)?;
    Ok(-(a * a))
}

/// `W² ± W'` exactly as generated by the superpotential.
pub fn partner_potential_raw<T: Real>(p: &ScarfParams<T>, branch: Branch, sign: Sign, x: T) -> Result<Complex<T>> {
    let w = superpotential(p, branch, x)?;
    let dw = superpotential_derivative(p, branch, x)?;
    Ok(w * w + dw * sign.factor::<T>())
}

/// `W² ± W' - W(∞)²`, the partner potential normalized to vanish at
/// infinity.
pub fn partner_potential<T: Real>(p: &ScarfParams<T>, branch: Branch, sign: Sign, x: T) -> Result<Complex<T>> {
    Ok(partner_potential_raw(p, branch, sign, x)? + factorization_energy(p, branch)?)
}

pub fn partner_poly<T: Real>(p: &ScarfParams<T>, branch: Branch, sign: Sign) -> Result<SechTanhPoly<T>> {
    let (a, b) = superpotential_coefficients(p, branch)?;
    Ok(partner_from_coefficients(p.alpha, a, b, sign))
}

/// `W² ± W' - a²` for `W = a tanh(αx) + b sech(αx)` with arbitrary complex
/// `a`, `b`.
pub fn partner_from_coefficients<T: Real>(alpha: T, a: Complex<T>, b: Complex<T>, sign: Sign) -> SechTanhPoly<T> {
    let w = SechTanhPoly::linear(alpha, a, b);
    let dw = w.derivative().scale(re(sign.factor()));
    &w * &w + dw - SechTanhPoly::constant(alpha, a * a)
}

/// How `W'` is obtained in [`potential_minus_from_w`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivative<T> {
    Closed,
    /// Central difference with step `h`.
    Central(T),
}

/// `V_- = W² - W'` for the given branch, shifted by the factorization energy
/// so that it vanishes at infinity. For `One`/`Two` this reproduces
/// [`potential_pt`]; for `PlusPt`/`MinusPt` it reproduces
/// [`potential_general`].
pub fn potential_minus_from_w<T: Real>(
    p: &ScarfParams<T>,
    branch: Branch,
    x: T,
    derivative: Derivative<T>,
) -> Result<Complex<T>> {
    let w = superpotential(p, branch, x)?;
    let dw = match derivative {
        Derivative::Closed => superpotential_derivative(p, branch, x)?,
        Derivative::Central(h) => {
            if !(h > T::zero()) {
                return Err(ScarfError::InvalidInput("finite-difference step must be > 0".into()));
            }
            (superpotential(p, branch, x + h)? - superpotential(p, branch, x - h)?) / (h + h)
        }
    };
    Ok(w * w - dw + factorization_energy(p, branch)?)
}

/// Potential selector used by the numerical oracle and the scattering
/// solver.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PotentialKind {
    /// The `C = 0` PT-symmetric potential.
    Pt,
    /// The general potential generated by `W±`.
    General(Sign),
    /// `W² ± W'` (shifted to vanish at infinity) for a branch.
    Partner { branch: Branch, sign: Sign },
    /// `V ≡ 0`.
    Free,
}

impl PotentialKind {
    /// `Pt` at `C = 0`, otherwise the potential generated by `W+`.
    pub fn natural<T: Real>(p: &ScarfParams<T>) -> Self {
        if p.is_real_phase() {
            PotentialKind::Pt
        } else {
            PotentialKind::General(Sign::Plus)
        }
    }

    pub fn poly<T: Real>(&self, p: &ScarfParams<T>) -> Result<SechTanhPoly<T>> {
        match *self {
            PotentialKind::Pt => Ok(potential_pt_poly(p)),
            PotentialKind::General(sign) => Ok(potential_general_poly(p, sign)),
            PotentialKind::Partner { branch, sign } => partner_poly(p, branch, sign),
            PotentialKind::Free => Ok(SechTanhPoly::zero(p.alpha)),
        }
    }
}
