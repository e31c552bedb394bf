//! Closed-form eigenvalues: the two real ladders of the PT-symmetric phase
//! (with broken-SUSY corrections) and the complex-conjugate pairs of the
//! PT-broken line.

use num_complex::Complex;
use serde::Serialize;

use crate::domains::{classify, classify_pt, DomainClass};
use crate::error::{Result, ScarfError};
use crate::params::{Branch, ScarfParams, Sign};
use crate::scalar::Real;

const MAX_ENTRIES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NMax {
    /// Exactly the normalizable levels.
    Auto,
    /// `n = 0..=m`, with non-normalizable entries flagged.
    Upto(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry<T> {
    pub n: usize,
    pub energy: Complex<T>,
    /// Set when the level violates the bound-state condition.
    pub beyond_cutoff: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumResult<T> {
    pub branch: Branch,
    pub domain: DomainClass,
    pub entries: Vec<SpectrumEntry<T>>,
}

impl<T: Real> SpectrumResult<T> {
    pub fn energies(&self) -> Vec<Complex<T>> {
        self.entries.iter().map(|e| e.energy).collect()
    }

    /// Energies of the normalizable levels only.
    pub fn bound_energies(&self) -> Vec<Complex<T>> {
        self.entries.iter().filter(|e| !e.beyond_cutoff).map(|e| e.energy).collect()
    }
}

/// The parameter `q` whose ladder a real branch follows: `A` for `One`,
/// `B - α/2` for `Two`.
fn ladder_parameter<T: Real>(p: &ScarfParams<T>, branch: Branch) -> Result<T> {
    match branch {
        Branch::One => Ok(p.a),
        Branch::Two => Ok(p.shifted_b()),
        other => Err(ScarfError::BranchUnavailable {
            branch: other.to_string(),
            reason: "real spectra exist for branches One and Two".into(),
        }),
    }
}

/// Real spectrum of branch `One` or `Two` at `C = 0`.
///
/// With ladder parameter `q` (`A` or `B - α/2`): for `q ≥ 0`,
/// `E_n = -(q - nα)²`, bound while `q - nα > 0`; for `q < 0` (broken SUSY),
/// `E_n = -(q + nα)²`, bound for `n ≥ 1` while `q + nα < 0`. The `n = 0`
/// entry of a broken ladder is never normalizable and is always flagged; it
/// is kept so that indices stay consecutive.
pub fn eigenvalues_real<T: Real>(p: &ScarfParams<T>, branch: Branch, n_max: NMax) -> Result<SpectrumResult<T>> {
    p.require_real_phase()?;
    let q = ladder_parameter(p, branch)?;
    let al = p.alpha;
    let broken = q < T::zero();
    let level = |n: usize| {
        let d = if broken { q + T::of(n) * al } else { q - T::of(n) * al };
        // `+ 0` turns -0 into +0
        let bound = if broken { n >= 1 && d < T::zero() } else { d > T::zero() };
        (-(d * d) + T::zero(), bound)
    };

    let count = match n_max {
        NMax::Upto(m) => m.checked_add(1).ok_or_else(|| ScarfError::InvalidInput("n_max too large".into()))?,
        NMax::Auto => {
            // last bound index: largest n with |q| - nα > 0 (unbroken) or
            // with q + nα < 0 and n ≥ 1 (broken)
            let ratio = (q.abs() / al).ceil();
            let last = ratio.to_usize().unwrap_or(usize::MAX).saturating_sub(1);
            let mut count = last.saturating_add(1).min(MAX_ENTRIES.saturating_add(1));
            // guard against rounding in the ceiling
            while count > 0 && !level(count - 1).1 {
                count -= 1;
            }
            while count <= MAX_ENTRIES && level(count).1 {
                count += 1;
            }
            if broken && count == 1 {
                0
            } else {
                count
            }
        }
    };
    if count > MAX_ENTRIES {
        return Err(ScarfError::InvalidInput(format!("spectrum would exceed {MAX_ENTRIES} entries")));
    }
    let entries = (0..count)
        .map(|n| {
            let (e, bound) = level(n);
            SpectrumEntry { n, energy: Complex::new(e, T::zero()), beyond_cutoff: !bound }
        })
        .collect();
    Ok(SpectrumResult { branch, domain: classify_pt(p).class, entries })
}

/// Complex pairs on the PT line: `E_n^± = -(nα - A ± iC)²`, `n = 0..=n_max`.
///
/// The `-` list is built as the elementwise conjugate of the `+` list, so the
/// pairing is exact. Levels with `A - nα ≤ 0` are flagged `beyond_cutoff`.
pub fn eigenvalues_complex<T: Real>(
    p: &ScarfParams<T>,
    n_max: usize,
) -> Result<(SpectrumResult<T>, SpectrumResult<T>)> {
    p.require_pt_line()?;
    if p.is_real_phase() {
        return Err(ScarfError::BranchUnavailable {
            branch: Branch::PlusPt.to_string(),
            reason: "complex pairs require C != 0".into(),
        });
    }
    if n_max >= MAX_ENTRIES {
        return Err(ScarfError::InvalidInput(format!("spectrum would exceed {MAX_ENTRIES} entries")));
    }
    let domain = classify(p).class;
    let plus: Vec<SpectrumEntry<T>> = (0..=n_max)
        .map(|n| {
            let d = Complex::new(T::of(n) * p.alpha - p.a, p.c);
            SpectrumEntry { n, energy: -(d * d), beyond_cutoff: !(p.a - T::of(n) * p.alpha > T::zero()) }
        })
        .collect();
    let minus = plus.iter().map(|e| SpectrumEntry { energy: e.energy.conj(), ..*e }).collect();
    Ok((
        SpectrumResult { branch: Branch::PlusPt, domain, entries: plus },
        SpectrumResult { branch: Branch::MinusPt, domain, entries: minus },
    ))
}

/// Energy carried by the closed-form eigenfunction `ψ_n^±`:
/// `-(A ± iC - nα)²`, i.e. `E_n^∓` in the labelling of
/// [`eigenvalues_complex`].
pub fn eigenfunction_energy<T: Real>(p: &ScarfParams<T>, n: usize, sign: Sign) -> Complex<T> {
    let d = Complex::new(p.a - T::of(n) * p.alpha, sign.factor::<T>() * p.c);
    -(d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(a: f64, b: f64, al: f64) -> ScarfParams<f64> {
        ScarfParams::real(a, b, al).unwrap()
    }

    fn pairs(s: &SpectrumResult<f64>) -> Vec<(usize, f64, bool)> {
        s.entries.iter().map(|e| (e.n, e.energy.re, e.beyond_cutoff)).collect()
    }

    #[test]
    fn unbroken_ladders() {
        let p = real(2.0, 1.0, 1.0);
        let one = eigenvalues_real(&p, Branch::One, NMax::Auto).unwrap();
        assert_eq!(pairs(&one), vec![(0, -4.0, false), (1, -1.0, false)]);
        assert_eq!(one.domain, DomainClass::SusyUnbroken);
        let two = eigenvalues_real(&p, Branch::Two, NMax::Auto).unwrap();
        assert_eq!(pairs(&two), vec![(0, -0.25, false)]);
        assert!(one.entries.iter().all(|e| e.energy.im == 0.0));
    }

    #[test]
    fn broken_ladders_flag_the_ground_entry() {
        let p = real(-2.0, 1.0, 1.0);
        let one = eigenvalues_real(&p, Branch::One, NMax::Upto(2)).unwrap();
        assert_eq!(pairs(&one), vec![(0, -4.0, true), (1, -1.0, false), (2, 0.0, true)]);
        assert_eq!(one.domain, DomainClass::SusyBrokenI);
        let auto = eigenvalues_real(&p, Branch::One, NMax::Auto).unwrap();
        assert_eq!(pairs(&auto), vec![(0, -4.0, true), (1, -1.0, false)]);
        assert_eq!(auto.bound_energies(), vec![Complex::new(-1.0, 0.0)]);

        let q = real(1.0, 0.0, 1.0);
        let two = eigenvalues_real(&q, Branch::Two, NMax::Upto(1)).unwrap();
        assert_eq!(pairs(&two), vec![(0, -0.25, true), (1, -0.25, true)]);
        assert!(eigenvalues_real(&q, Branch::Two, NMax::Auto).unwrap().entries.is_empty());

        let r = real(-3.0, 0.0, 1.0);
        let one = eigenvalues_real(&r, Branch::One, NMax::Auto).unwrap();
        assert_eq!(one.bound_energies(), vec![Complex::new(-4.0, 0.0), Complex::new(-1.0, 0.0)]);
    }

    #[test]
    fn no_bound_states() {
        let p = real(0.0, 0.5, 1.0);
        assert!(eigenvalues_real(&p, Branch::One, NMax::Auto).unwrap().entries.is_empty());
        let p = real(-0.4, 0.2, 1.0);
        assert!(eigenvalues_real(&p, Branch::One, NMax::Auto).unwrap().entries.is_empty());
        assert!(eigenvalues_real(&p, Branch::Two, NMax::Auto).unwrap().entries.is_empty());
    }

    #[test]
    fn exceptional_line_merges_branches() {
        let p = real(1.0, 2.0, 2.0);
        for n in [NMax::Auto, NMax::Upto(6)] {
            let one = eigenvalues_real(&p, Branch::One, n).unwrap();
            let two = eigenvalues_real(&p, Branch::Two, n).unwrap();
            assert_eq!(one.entries, two.entries);
            assert_eq!(one.domain, DomainClass::ExceptionalLine);
        }
        let one = eigenvalues_real(&p, Branch::One, NMax::Upto(2)).unwrap();
        assert_eq!(pairs(&one), vec![(0, -1.0, false), (1, -1.0, true), (2, -9.0, true)]);
    }

    #[test]
    fn real_spectrum_rejects_complex_phase() {
        let p = ScarfParams::new(1.0, 1.5, 0.5, 1.0).unwrap();
        assert_eq!(eigenvalues_real(&p, Branch::One, NMax::Auto).unwrap_err().name(), "NotRealPhase");
        let p = real(1.0, 1.5, 1.0);
        assert!(eigenvalues_real(&p, Branch::PlusPt, NMax::Auto).is_err());
    }

    #[test]
    fn complex_pairs() {
        let p = ScarfParams::new(1.0, 1.5, 0.5, 1.0).unwrap();
        let (plus, minus) = eigenvalues_complex(&p, 3).unwrap();
        assert_eq!(plus.entries[0].energy, Complex::new(-0.75, 1.0));
        assert_eq!(minus.entries[0].energy, Complex::new(-0.75, -1.0));
        for (a, b) in plus.entries.iter().zip(&minus.entries) {
            assert_eq!(a.energy, b.energy.conj());
        }
        let off = ScarfParams::new(1.0, 3.0, 0.5, 1.0).unwrap();
        assert_eq!(eigenvalues_complex(&off, 2).unwrap_err().name(), "NotOnPTLine");
    }

    #[test]
    fn coalescence_iff_a_is_a_multiple_of_alpha() {
        let p = ScarfParams::on_pt_line(2.0, 0.5, 1.0).unwrap();
        let (plus, minus) = eigenvalues_complex(&p, 4).unwrap();
        assert_eq!(plus.entries[2].energy, Complex::new(0.25, 0.0));
        assert_eq!(minus.entries[2].energy, Complex::new(0.25, -0.0));
        for n in [0, 1, 3, 4] {
            assert!((plus.entries[n].energy - minus.entries[n].energy).norm() > 1e-12);
        }
        let q = ScarfParams::on_pt_line(2.3, 0.5, 1.0).unwrap();
        let (plus, minus) = eigenvalues_complex(&q, 4).unwrap();
        for (a, b) in plus.entries.iter().zip(&minus.entries) {
            assert!((a.energy - b.energy).norm() > 1e-12);
        }
    }

    #[test]
    fn eigenfunction_energy_labels() {
        let p = ScarfParams::new(1.0, 1.5, 0.5, 1.0).unwrap();
        let (plus, minus) = eigenvalues_complex(&p, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(eigenfunction_energy(&p, n, Sign::Plus), minus.entries[n].energy);
            assert_eq!(eigenfunction_energy(&p, n, Sign::Minus), plus.entries[n].energy);
        }
    }

    #[test]
    fn f32_ladders() {
        let p = ScarfParams::<f32>::real(2.0, 1.0, 1.0).unwrap();
        let one = eigenvalues_real(&p, Branch::One, NMax::Auto).unwrap();
        assert_eq!(one.energies(), vec![Complex::new(-4.0f32, 0.0), Complex::new(-1.0, 0.0)]);
    }
}
