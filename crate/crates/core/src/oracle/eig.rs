//! Eigensolvers for complex-symmetric tridiagonal matrices.

use num_complex::Complex;

use super::TriDiag;
use crate::error::{Result, ScarfError};
use crate::scalar::{cmp_re_im, Real};

/// Eigenvalue of the 2×2 block `[[a, b], [b, c]]` closer to `a`.
fn wilkinson<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let mean = (a + c) * half;
    let root = ((a - c) * half * ((a - c) * half) + b * b).sqrt();
    let (l1, l2) = (mean + root, mean - root);
    if (l1 - a).norm() <= (l2 - a).norm() {
        l1
    } else {
        l2
    }
}

enum Sweep {
    Done,
    /// `f² + g² ≈ 0` with nonzero `f`, `g`: the complex-orthogonal rotation
    /// does not exist.
    Breakdown,
}

/// One implicit QL sweep on rows `l..=m` with shift `ks`.
fn ql_sweep<T: Real>(d: &mut [Complex<T>], e: &mut [Complex<T>], l: usize, m: usize, ks: Complex<T>) -> Sweep {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let two = T::lit(2.0);
    let (mut s, mut c, mut p) = (one, one, zero);
    let mut g = d[m] - ks;
    let mut i = m;
    while i > l {
        i -= 1;
        let f = s * e[i];
        let b = c * e[i];
        let r = (f * f + g * g).sqrt();
        e[i + 1] = r;
        let scale = f.norm() + g.norm();
        if scale == T::zero() {
            // exact split below row i: recover and let the outer loop deflate
            d[i + 1] = d[i + 1] - p;
            e[m] = zero;
            return Sweep::Done;
        }
        if r.norm() <= T::lit(64.0) * T::epsilon() * scale {
            return Sweep::Breakdown;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        let r2 = (d[i] - g) * s + c * b * two;
        p = s * r2;
        d[i + 1] = g + p;
        g = c * r2 - b;
    }
    d[l] = d[l] - p;
    e[l] = g;
    e[m] = zero;
    Sweep::Done
}

/// All eigenvalues by implicit QL with Wilkinson shifts and deflation,
/// sorted by `(Re, Im)`.
///
/// The rotations are complex-orthogonal (`c² + s² = 1`), which preserves the
/// complex-symmetric tridiagonal structure. When a rotation breaks down the
/// sweep is undone and retried with an exceptional shift.
pub fn eig_all<T: Real>(m: &TriDiag<T>) -> Result<Vec<Complex<T>>> {
    let n = m.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut d = m.diag.clone();
    let mut e = vec![Complex::new(m.off, T::zero()); n];
    e[n - 1] = zero;
    let max_iter = 30 * n;
    let eps = T::epsilon();

    for l in 0..n {
        let mut iter = 0usize;
        let mut breakdowns = 0usize;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = d[mm].norm() + d[mm + 1].norm();
                if e[mm].norm() <= eps * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            if iter >= max_iter {
                return Err(ScarfError::NoConvergence { index: l, iterations: iter });
            }
            iter += 1;
            let mut ks = wilkinson(d[l], e[l], d[l + 1]);
            if iter.is_multiple_of(10) || breakdowns > 0 {
                // exceptional shift, varied with the number of failures
                let k = T::of(breakdowns + iter / 10);
                ks = ks + Complex::new(T::lit(0.7), T::lit(0.3)) * e[l].norm() * k * T::lit(0.1);
            }
            let saved_d: Vec<_> = d[l..=mm].to_vec();
            let saved_e: Vec<_> = e[l..=mm].to_vec();
            match ql_sweep(&mut d, &mut e, l, mm, ks) {
                Sweep::Done => breakdowns = 0,
                Sweep::Breakdown => {
                    d[l..=mm].copy_from_slice(&saved_d);
                    e[l..=mm].copy_from_slice(&saved_e);
                    breakdowns += 1;
                }
            }
        }
    }
    d.sort_by(cmp_re_im);
    Ok(d)
}

/// Eigenpair found by [`eig_refine`].
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<T> {
    pub value: Complex<T>,
    /// Unit 2-norm eigenvector.
    pub vector: Vec<Complex<T>>,
    pub iterations: usize,
    /// `Re E` below the discrete continuum floor `-10 h²`.
    pub bound: bool,
}

/// Solves `(M - σ) y = b` by Gaussian elimination with partial pivoting.
/// Returns `None` on an exactly singular pivot.
fn solve_shifted<T: Real>(m: &TriDiag<T>, sigma: Complex<T>, b: &mut [Complex<T>]) -> Option<()> {
    let n = m.len();
    let zero = Complex::new(T::zero(), T::zero());
    let off = Complex::new(m.off, T::zero());
    let mut d: Vec<_> = m.diag.iter().map(|&v| v - sigma).collect();
    let mut dl = vec![off; n.saturating_sub(1)];
    let mut du = vec![off; n.saturating_sub(1)];
    let mut du2 = vec![zero; n.saturating_sub(2)];
    for i in 0..n - 1 {
        if d[i].norm() >= dl[i].norm() {
            if d[i] == zero {
                return None;
            }
            let fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] = d[i + 1] - fact * du[i];
            b[i + 1] = b[i + 1] - fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            let (old_du, old_d1) = (du[i], d[i + 1]);
            d[i] = dl[i];
            dl[i] = fact;
            du[i] = old_d1;
            d[i + 1] = old_du - fact * old_d1;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            b.swap(i, i + 1);
            b[i + 1] = b[i + 1] - fact * b[i];
        }
    }
    if d[n - 1] == zero {
        return None;
    }
    b[n - 1] = b[n - 1] / d[n - 1];
    if n >= 2 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
    if b.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        Some(())
    } else {
        None
    }
}

fn normalize<T: Real>(v: &mut [Complex<T>]) {
    let norm = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
    if norm > T::zero() {
        for z in v.iter_mut() {
            *z = *z / norm;
        }
    }
}

const REFINE_MAX_ITER: usize = 200;
const REFINE_TOL: f64 = 1e-12;
/// Relative change below which the fixed shift is replaced by the running
/// Rayleigh quotient.
const RQI_SWITCH: f64 = 1e-4;

/// Inverse iteration from `shift`, returning the eigenpair nearest to it.
///
/// The shift stays fixed until the Rayleigh quotient `x^H M x / x^H x`
/// settles, then follows it; convergence is declared when successive
/// quotients differ by less than `1e-12` (relative to `max(1, |ρ|)`). An
/// exactly singular shift is perturbed by `1e-12`.
pub fn eig_refine<T: Real>(m: &TriDiag<T>, shift: Complex<T>) -> Result<EigenPair<T>> {
    let n = m.len();
    let tol = T::lit(REFINE_TOL);
    let mut x: Vec<Complex<T>> =
        (0..n).map(|j| Complex::new(T::one() + T::lit(0.1) * T::of(j % 7), T::lit(0.05) * T::of(j % 3))).collect();
    normalize(&mut x);
    let mut sigma = shift;
    let mut rho_prev: Option<Complex<T>> = None;
    for it in 1..=REFINE_MAX_ITER {
        let mut y = x.clone();
        let mut tries = 0;
        while solve_shifted(m, sigma, &mut y).is_none() {
            tries += 1;
            if tries > 8 {
                return Err(ScarfError::NoConvergence { index: 0, iterations: it });
            }
            sigma = sigma + Complex::new(T::lit(1e-12) * sigma.norm().max(T::one()), T::zero());
            y = x.clone();
        }
        normalize(&mut y);
        x = y;
        let mx = m.apply(&x);
        let rho = x.iter().zip(&mx).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
        if let Some(prev) = rho_prev {
            let change = (rho - prev).norm();
            let scale = rho.norm().max(T::one());
            if change < tol * scale {
                // h² = -1/off, so the floor -10 h² is 10/off
                let bound = rho.re < T::lit(10.0) / m.off;
                return Ok(EigenPair { value: rho, vector: x, iterations: it, bound });
            }
            if change < T::lit(RQI_SWITCH) * scale {
                sigma = rho;
            }
        }
        rho_prev = Some(rho);
    }
    Err(ScarfError::NoConvergence { index: 0, iterations: REFINE_MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn constant_tridiagonal_spectrum() {
        let n = 8;
        let (dv, o) = (c(1.5, 0.3), -0.7);
        let m = TriDiag::new(vec![dv; n], o).unwrap();
        let got = eig_all(&m).unwrap();
        let mut want: Vec<_> =
            (1..=n).map(|k| dv + 2.0 * o * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos()).collect();
        want.sort_by(cmp_re_im);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-13, "{g} vs {w}");
        }
    }

    #[test]
    fn two_by_two_quadratic() {
        let (a, b, o) = (c(1.0, 2.0), c(-0.5, 0.1), 0.8);
        let m = TriDiag::new(vec![a, b], o).unwrap();
        for l in eig_all(&m).unwrap() {
            assert!(((l - a) * (l - b) - o * o).norm() < 1e-13);
        }
    }

    #[test]
    fn refine_converges_to_nearest() {
        let n = 50;
        let diag: Vec<_> = (0..n).map(|j| c(j as f64 * 0.1, 0.02 * (j as f64).sin())).collect();
        let m = TriDiag::new(diag, -1.0).unwrap();
        let all = eig_all(&m).unwrap();
        let target = all[17] + c(1e-3, -1e-3);
        let pair = eig_refine(&m, target).unwrap();
        let nearest =
            all.iter().min_by(|a, b| (*a - target).norm().partial_cmp(&(*b - target).norm()).unwrap()).unwrap();
        assert!((pair.value - nearest).norm() < 1e-10);
        let r = m.apply(&pair.vector);
        for (ri, vi) in r.iter().zip(&pair.vector) {
            assert!((ri - pair.value * vi).norm() < 1e-8);
        }
    }

    #[test]
    fn exact_eigenvalue_shift_is_perturbed() {
        let m = TriDiag::new(vec![c(0.0, 0.0); 3], 1.0).unwrap();
        // 0 is an eigenvalue of the free 3x3 block
        let pair = eig_refine(&m, c(0.0, 0.0)).unwrap();
        assert!(pair.value.norm() < 1e-10);
    }
}
