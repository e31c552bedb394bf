//! Parameter records shared by every module.

use serde::Serialize;
use std::fmt;

use crate::error::{Result, ScarfError};
use crate::scalar::Real;

/// Absolute tolerance for membership of the codimension-one parameter sets
/// `A = B - alpha/2`, `A = -(B - alpha/2)` and `A = n alpha`.
pub const TOL_LINE: f64 = 1e-9;

/// Parameters `(A, B, C, alpha)` of the complex Scarf II superpotentials.
///
/// `c` is the PT-breaking strength; `alpha` is the inverse width.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScarfParams<T> {
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "B")]
    pub b: T,
    #[serde(rename = "C")]
    pub c: T,
    pub alpha: T,
}

impl<T: Real> ScarfParams<T> {
    pub fn new(a: T, b: T, c: T, alpha: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && alpha.is_finite()) {
            return Err(ScarfError::InvalidParams("all parameters must be finite".into()));
        }
        if alpha <= T::zero() {
            return Err(ScarfError::InvalidParams(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(Self { a, b, c, alpha })
    }

    /// Real-phase parameters (`C = 0`).
    pub fn real(a: T, b: T, alpha: T) -> Result<Self> {
        Self::new(a, b, T::zero(), alpha)
    }

    /// Point on the PT line `B = A + alpha/2` with breaking strength `c`.
    pub fn on_pt_line(a: T, c: T, alpha: T) -> Result<Self> {
        Self::new(a, a + alpha / T::lit(2.0), c, alpha)
    }

    pub fn with_c(self, c: T) -> Result<Self> {
        Self::new(self.a, self.b, c, self.alpha)
    }

    /// `B - alpha/2`, the coordinate in which the hyperbolas are axis-aligned.
    #[inline]
    pub fn shifted_b(&self) -> T {
        self.b - self.alpha / T::lit(2.0)
    }

    /// Signed distance functional `A - (B - alpha/2)` of the exceptional line.
    #[inline]
    pub fn exceptional_offset(&self) -> T {
        self.a - self.shifted_b()
    }

    /// Signed distance functional `A + (B - alpha/2)` of the isospectral line.
    #[inline]
    pub fn isospectral_offset(&self) -> T {
        self.a + self.shifted_b()
    }

    pub fn is_real_phase(&self) -> bool {
        self.c == T::zero()
    }

    pub fn is_on_pt_line(&self) -> bool {
        self.exceptional_offset().abs() <= T::lit(TOL_LINE)
    }

    pub(crate) fn require_pt_line(&self) -> Result<()> {
        if self.is_on_pt_line() {
            Ok(())
        } else {
            Err(ScarfError::NotOnPtLine { offset: f(self.exceptional_offset()) })
        }
    }

    pub(crate) fn require_real_phase(&self) -> Result<()> {
        if self.is_real_phase() {
            Ok(())
        } else {
            Err(ScarfError::NotRealPhase { c: f(self.c) })
        }
    }
}

#[inline]
pub(crate) fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The `±` appearing in the complex superpotentials, eigenvalues and
/// eigenfunctions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn factor<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Superpotential selector: `W1`, `W2`, or the pair `W±` living on the PT
/// line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    One,
    Two,
    PlusPt,
    MinusPt,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::One => "One",
            Branch::Two => "Two",
            Branch::PlusPt => "PlusPT",
            Branch::MinusPt => "MinusPT",
        })
    }
}
