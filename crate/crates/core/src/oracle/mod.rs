//! Independent numerical check of the closed forms: a second-order
//! finite-difference Hamiltonian on a Dirichlet box, a complex eigensolver,
//! eigenvalue matching and Richardson extrapolation.

mod eig;
mod matching;
mod residual;

pub use eig::{eig_all, eig_refine, EigenPair};
pub use matching::{match_energies, match_spectrum, MatchPair, MatchReport};
pub use residual::{residual_step, schrodinger_residual, ResidualReport};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, ScarfError};
use crate::params::{f, ScarfParams};
use crate::potential::PotentialKind;
use crate::scalar::{cmp_re_im, Real};

/// Edge magnitude of `|V|` above which a warning is attached.
pub const EDGE_WARN: f64 = 1e-10;
/// Edge magnitude of `|V|` above which the box is rejected.
pub const EDGE_FAIL: f64 = 1e-6;

/// Interior points `x_j = -L + j h`, `j = 1..=N`, `h = 2L/(N+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid<T> {
    pub l: T,
    pub n: usize,
    pub h: T,
}

impl<T: Real> Grid<T> {
    pub fn new(l: T, n: usize) -> Result<Self> {
        if !(l > T::zero()) || !l.is_finite() || n < 3 {
            return Err(ScarfError::InvalidInput(format!("grid needs L > 0 and N >= 3, got L = {l}, N = {n}")));
        }
        Ok(Self { l, n, h: (l + l) / T::of(n + 1) })
    }

    /// `L = max(20/α, 20)`, `N = 2000`.
    pub fn default_for(alpha: T) -> Self {
        let l = (T::lit(20.0) / alpha).max(T::lit(20.0));
        Self::new(l, 2000).expect("valid default grid")
    }

    /// Same box with exactly half the spacing (`2N + 1` interior points).
    pub fn refined(&self) -> Self {
        Self::new(self.l, 2 * self.n + 1).expect("refinement of a valid grid")
    }

    /// Position of interior point `j` (1-based).
    pub fn x(&self, j: usize) -> T {
        if j == self.n + 1 {
            self.l
        } else {
            -self.l + T::of(j) * self.h
        }
    }

    pub fn xs(&self) -> Vec<T> {
        (1..=self.n).map(|j| self.x(j)).collect()
    }

    /// `-10 h²`: numeric eigenvalues above this are continuum approximants.
    pub fn continuum_floor(&self) -> T {
        -T::lit(10.0) * self.h * self.h
    }
}

/// Complex-symmetric tridiagonal matrix with a uniform real off-diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriDiag<T> {
    pub diag: Vec<Complex<T>>,
    pub off: T,
}

impl<T: Real> TriDiag<T> {
    pub fn new(diag: Vec<Complex<T>>, off: T) -> Result<Self> {
        if diag.is_empty() {
            return Err(ScarfError::InvalidInput("empty matrix".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.len();
        (0..n)
            .map(|j| {
                let mut acc = self.diag[j] * v[j];
                if j > 0 {
                    acc = acc + v[j - 1] * self.off;
                }
                if j + 1 < n {
                    acc = acc + v[j + 1] * self.off;
                }
                acc
            })
            .collect()
    }

    /// The matrix with the grid orientation reversed.
    pub fn reversed(&self) -> Self {
        Self { diag: self.diag.iter().rev().copied().collect(), off: self.off }
    }
}

/// A discretized Hamiltonian and the diagnostics gathered while building it.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian<T> {
    pub matrix: TriDiag<T>,
    pub grid: Grid<T>,
    /// `max(|V(-L)|, |V(L)|)`.
    pub edge_magnitude: T,
    pub warnings: Vec<String>,
}

/// `-d²/dx² + V` with Dirichlet ends: `diag_j = 2/h² + V(x_j)`,
/// `off = -1/h²`.
///
/// Fails with `GridTooSmall` if `|V(±L)| > 1e-6`; warns above `1e-10`.
pub fn build_hamiltonian<T: Real>(p: &ScarfParams<T>, kind: PotentialKind, g: &Grid<T>) -> Result<Hamiltonian<T>> {
    let v = kind.poly(p)?;
    let edge = v.eval(-g.l).norm().max(v.eval(g.l).norm());
    let mut warnings = Vec::new();
    if edge > T::lit(EDGE_FAIL) {
        return Err(ScarfError::GridTooSmall { magnitude: f(edge), threshold: EDGE_FAIL });
    }
    if edge > T::lit(EDGE_WARN) {
        warnings.push(format!("potential magnitude {:e} at the box edge exceeds {EDGE_WARN:e}", f(edge)));
    }
    let inv_h2 = T::one() / (g.h * g.h);
    let diag = (1..=g.n).map(|j| v.eval(g.x(j)) + inv_h2 + inv_h2).collect();
    Ok(Hamiltonian { matrix: TriDiag { diag, off: -inv_h2 }, grid: *g, edge_magnitude: edge, warnings })
}

/// Numeric eigenvalues below the continuum floor of `g`.
pub fn bound_candidates<T: Real>(all: &[Complex<T>], g: &Grid<T>) -> Vec<Complex<T>> {
    let floor = g.continuum_floor();
    all.iter().copied().filter(|e| e.re < floor).collect()
}

/// Full numeric spectrum of one discretization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericSpectrum<T> {
    pub grid: Grid<T>,
    pub all: Vec<Complex<T>>,
    pub bound: Vec<Complex<T>>,
    pub warnings: Vec<String>,
}

pub fn numeric_spectrum<T: Real>(p: &ScarfParams<T>, kind: PotentialKind, g: &Grid<T>) -> Result<NumericSpectrum<T>> {
    let h = build_hamiltonian(p, kind, g)?;
    let all = eig_all(&h.matrix)?;
    let bound = bound_candidates(&all, g);
    Ok(NumericSpectrum { grid: *g, all, bound, warnings: h.warnings })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Richardson<T> {
    pub coarse: NumericSpectrum<T>,
    pub fine: NumericSpectrum<T>,
    /// `(4 E_fine - E_coarse)/3` for every bound level found on both grids,
    /// sorted by `(Re, Im)`.
    pub extrapolated: Vec<Complex<T>>,
    pub warnings: Vec<String>,
}

/// Solves on `N` and `2N + 1` interior points (exactly halving `h`), pairs
/// the bound candidates and extrapolates the `O(h²)` error away.
pub fn richardson_pair<T: Real>(p: &ScarfParams<T>, kind: PotentialKind, l: T, n: usize) -> Result<Richardson<T>> {
    let g = Grid::new(l, n)?;
    let gf = g.refined();
    let (coarse, fine) = rayon::join(|| numeric_spectrum(p, kind, &g), || numeric_spectrum(p, kind, &gf));
    let (coarse, fine) = (coarse?, fine?);
    let pairs = matching::greedy_pairs(&coarse.bound, &fine.bound);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let mut extrapolated: Vec<Complex<T>> =
        pairs.iter().map(|&(i, j)| (fine.bound[j] * four - coarse.bound[i]) / three).collect();
    extrapolated.sort_by(cmp_re_im);
    let mut warnings = coarse.warnings.clone();
    for w in &fine.warnings {
        if !warnings.contains(w) {
            warnings.push(w.clone());
        }
    }
    if pairs.len() != coarse.bound.len() || pairs.len() != fine.bound.len() {
        warnings.push(format!(
            "{} coarse and {} fine bound candidates, {} paired",
            coarse.bound.len(),
            fine.bound.len(),
            pairs.len()
        ));
    }
    Ok(Richardson { coarse, fine, extrapolated, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Sign;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn grid_geometry() {
        let g = Grid::<f64>::new(10.0, 999).unwrap();
        assert_eq!(g.h, 0.02);
        assert!((g.x(1) + 9.98).abs() < 1e-12);
        assert_eq!(g.refined().h, 0.01);
        assert!(Grid::<f64>::new(0.0, 10).is_err());
        assert!(Grid::<f64>::new(1.0, 2).is_err());
        assert_eq!(Grid::<f64>::default_for(0.5).l, 40.0);
        assert_eq!(Grid::<f64>::default_for(2.0).l, 20.0);
    }

    #[test]
    fn particle_in_a_box() {
        let p = ScarfParams::real(0.0, 0.0, 1.0).unwrap();
        let g = Grid::<f64>::new(10.0, 999).unwrap();
        let h = build_hamiltonian(&p, PotentialKind::Free, &g).unwrap();
        assert!(h.matrix.diag.iter().all(|d| *d == c(2.0 / (g.h * g.h), 0.0)));
        assert_eq!(h.matrix.off, -1.0 / (g.h * g.h));
        let e = eig_all(&h.matrix).unwrap();
        let exact = (std::f64::consts::PI / 20.0).powi(2);
        assert!((e[0].re - exact).abs() < 1e-4);
        assert!((e[0].re - 0.02467).abs() < 1e-4);
    }

    #[test]
    fn pt_matrix_is_conjugate_reversed() {
        let p = ScarfParams::real(2.0, 1.0, 1.0).unwrap();
        let g = Grid::<f64>::new(20.0, 400).unwrap();
        let h = build_hamiltonian(&p, PotentialKind::Pt, &g).unwrap();
        let n = g.n;
        for j in 0..n {
            assert!((h.matrix.diag[j] - h.matrix.diag[n - 1 - j].conj()).norm() < 1e-9);
        }
    }

    #[test]
    fn small_box_is_rejected() {
        let p = ScarfParams::real(2.0, 1.0, 1.0).unwrap();
        let g = Grid::<f64>::new(3.0, 100).unwrap();
        assert_eq!(build_hamiltonian(&p, PotentialKind::Pt, &g).unwrap_err().name(), "GridTooSmall");
    }

    #[test]
    fn box_richardson_reaches_exact_level() {
        let p = ScarfParams::real(0.0, 0.0, 1.0).unwrap();
        let g = Grid::<f64>::new(10.0, 1000).unwrap();
        let e1 = eig_all(&build_hamiltonian(&p, PotentialKind::Free, &g).unwrap().matrix).unwrap()[0];
        let e2 = eig_all(&build_hamiltonian(&p, PotentialKind::Free, &g.refined()).unwrap().matrix).unwrap()[0];
        let extrap = (e2 * 4.0 - e1) / 3.0;
        let exact = (std::f64::consts::PI / 20.0).powi(2);
        assert!((extrap.re - exact).abs() < 1e-8);
    }

    #[test]
    fn refine_from_analytic_shift() {
        let p = ScarfParams::real(2.0, 1.0, 1.0).unwrap();
        let g = Grid::<f64>::new(20.0, 800).unwrap();
        let h = build_hamiltonian(&p, PotentialKind::Pt, &g).unwrap();
        let all = eig_all(&h.matrix).unwrap();
        let pair = eig_refine(&h.matrix, c(-4.0, 0.0)).unwrap();
        assert!(pair.bound);
        assert!((pair.value - all[0]).norm() < 1e-9);
        assert!((pair.value.re + 4.0).abs() < 1e-2);
        let far = eig_refine(&h.matrix, c(100.0, 0.0)).unwrap();
        assert!(!far.bound);
    }

    #[test]
    fn free_refine_is_fast() {
        let p = ScarfParams::real(0.0, 0.0, 1.0).unwrap();
        let g = Grid::<f64>::new(10.0, 999).unwrap();
        let h = build_hamiltonian(&p, PotentialKind::Free, &g).unwrap();
        let lowest = eig_all(&h.matrix).unwrap()[0];
        let pair = eig_refine(&h.matrix, lowest).unwrap();
        assert!(pair.iterations <= 5, "{} iterations", pair.iterations);
    }

    #[test]
    fn reversal_invariance() {
        let p = ScarfParams::new(1.0, 1.5, 0.5, 1.0).unwrap();
        let g = Grid::<f64>::new(20.0, 300).unwrap();
        let h = build_hamiltonian(&p, PotentialKind::General(Sign::Plus), &g).unwrap();
        let a = eig_all(&h.matrix).unwrap();
        let b = eig_all(&h.matrix.reversed()).unwrap();
        // compare as multisets: near-equal real parts may swap sort order
        let rep = match_energies(&a, &b, 1e-10, 0.0);
        assert!(rep.unmatched_analytic.is_empty() && rep.unmatched_numeric.is_empty());
    }
}
