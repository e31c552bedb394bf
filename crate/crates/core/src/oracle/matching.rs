//! Greedy nearest-neighbour matching of analytic and numeric eigenvalues.

use num_complex::Complex;
use serde::Serialize;

use crate::scalar::Real;
use crate::spectra::SpectrumResult;

/// Index pairs `(i, j)` of all-pairs greedy matching: repeatedly take the
/// closest unused pair. Ties are broken by index, so the result is
/// deterministic.
pub(crate) fn greedy_pairs<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<(usize, usize)> {
    let mut cand: Vec<(T, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            cand.push(((x - y).norm(), i, j));
        }
    }
    cand.sort_by(|p, q| {
        p.0.partial_cmp(&q.0).unwrap_or(std::cmp::Ordering::Equal).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2))
    });
    let (mut used_a, mut used_b) = (vec![false; a.len()], vec![false; b.len()]);
    let mut out = Vec::new();
    for (_, i, j) in cand {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            out.push((i, j));
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatchPair<T> {
    pub analytic: Complex<T>,
    pub numeric: Complex<T>,
    pub abs_error: T,
    pub rel_error: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchReport<T> {
    pub pairs: Vec<MatchPair<T>>,
    pub unmatched_analytic: Vec<Complex<T>>,
    pub unmatched_numeric: Vec<Complex<T>>,
}

impl<T: Real> MatchReport<T> {
    /// Every analytic level found a numeric partner.
    pub fn all_matched(&self) -> bool {
        self.unmatched_analytic.is_empty()
    }

    pub fn max_abs_error(&self) -> T {
        self.pairs.iter().fold(T::zero(), |m, p| m.max(p.abs_error))
    }
}

/// Matches the unflagged levels of `analytic` against `numeric`.
pub fn match_spectrum<T: Real>(
    analytic: &SpectrumResult<T>,
    numeric: &[Complex<T>],
    tol_abs: T,
    tol_rel: T,
) -> MatchReport<T> {
    match_energies(&analytic.bound_energies(), numeric, tol_abs, tol_rel)
}

/// Greedy matching; a pair is accepted when
/// `|Δ| ≤ max(tol_abs, tol_rel·|E|)`, otherwise both sides stay unmatched.
/// Each numeric value is used at most once.
pub fn match_energies<T: Real>(
    analytic: &[Complex<T>],
    numeric: &[Complex<T>],
    tol_abs: T,
    tol_rel: T,
) -> MatchReport<T> {
    let mut used_a = vec![false; analytic.len()];
    let mut used_n = vec![false; numeric.len()];
    let mut pairs = Vec::new();
    for (i, j) in greedy_pairs(analytic, numeric) {
        let (a, n) = (analytic[i], numeric[j]);
        let abs_error = (a - n).norm();
        if abs_error <= tol_abs.max(tol_rel * a.norm()) {
            used_a[i] = true;
            used_n[j] = true;
            let rel_error = if a.norm() > T::zero() { abs_error / a.norm() } else { abs_error };
            pairs.push(MatchPair { analytic: a, numeric: n, abs_error, rel_error });
        }
    }
    let pick = |v: &[Complex<T>], used: &[bool]| v.iter().zip(used).filter(|(_, u)| !**u).map(|(x, _)| *x).collect();
    MatchReport { pairs, unmatched_analytic: pick(analytic, &used_a), unmatched_numeric: pick(numeric, &used_n) }
}
