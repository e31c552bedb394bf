//! Numerical check of the SUSY partner ladder `E_n^(+) = E_(n+1)^(-)`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, ScarfError};
use crate::oracle::{richardson_pair, Grid};
use crate::params::{Branch, ScarfParams, Sign};
use crate::potential::PotentialKind;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LadderLevel<T> {
    /// Level `n + 1` of `V_-`.
    pub minus: Complex<T>,
    /// Level `n` of `V_+`.
    pub plus: Complex<T>,
    pub abs_error: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderReport<T> {
    pub branch: Branch,
    /// Extrapolated bound spectrum of `W² - W'`.
    pub minus: Vec<Complex<T>>,
    /// Extrapolated bound spectrum of `W² + W'`.
    pub plus: Vec<Complex<T>>,
    /// Lowest level of `V_-`, absent from `V_+`.
    pub ground_state: Option<Complex<T>>,
    pub levels: Vec<LadderLevel<T>>,
    pub max_error: T,
    pub tolerance: T,
    pub passed: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderOptions<T> {
    pub grid: Grid<T>,
    pub tolerance: T,
}

impl<T: Real> LadderOptions<T> {
    /// Default oracle grid and `1e-6` absolute tolerance.
    pub fn for_alpha(alpha: T) -> Self {
        Self { grid: Grid::default_for(alpha), tolerance: T::lit(1e-6) }
    }
}

/// Diagonalizes both partners `W² ∓ W'` (each shifted by `-W(∞)²`) and
/// checks that the bound spectrum of `V_+` is that of `V_-` without its
/// ground state, comparing at most the lowest `k` common levels.
///
/// Requires `C = 0` and unbroken SUSY for the chosen branch.
pub fn susy_ladder_check<T: Real>(
    p: &ScarfParams<T>,
    branch: Branch,
    k: usize,
    opts: &LadderOptions<T>,
) -> Result<LadderReport<T>> {
    p.require_real_phase()?;
    let q = match branch {
        Branch::One => p.a,
        Branch::Two => p.shifted_b(),
        other => {
            return Err(ScarfError::BranchUnavailable {
                branch: other.to_string(),
                reason: "the ladder check uses branches One and Two".into(),
            })
        }
    };
    if q < T::zero() {
        return Err(ScarfError::InvalidParams(format!("branch {branch} has broken SUSY at these parameters")));
    }
    let g = opts.grid;
    let (minus, plus) = rayon::join(
        || richardson_pair(p, PotentialKind::Partner { branch, sign: Sign::Minus }, g.l, g.n),
        || richardson_pair(p, PotentialKind::Partner { branch, sign: Sign::Plus }, g.l, g.n),
    );
    let (minus, plus) = (minus?, plus?);
    let mut warnings = minus.warnings.clone();
    warnings.extend(plus.warnings.iter().cloned());

    let (em, ep) = (minus.extrapolated, plus.extrapolated);
    let levels: Vec<LadderLevel<T>> = em
        .iter()
        .skip(1)
        .zip(&ep)
        .take(k)
        .map(|(&m, &pl)| LadderLevel { minus: m, plus: pl, abs_error: (m - pl).norm() })
        .collect();
    let max_error = levels.iter().fold(T::zero(), |a, l| a.max(l.abs_error));
    let counts_agree = ep.len() == em.len().saturating_sub(1);
    let passed = counts_agree && max_error <= opts.tolerance;
    Ok(LadderReport {
        branch,
        ground_state: em.first().copied(),
        minus: em,
        plus: ep,
        levels,
        max_error,
        tolerance: opts.tolerance,
        passed,
        warnings,
    })
}
