//! Mapping between the Schrödinger picture and a planar TE optical
//! structure: incidence angle to energy, potential to permittivity and
//! refractive index.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, ScarfError};
use crate::field::{uniform_grid, FieldSample};
use crate::params::ScarfParams;
use crate::params::Sign;
use crate::potential::{potential_general, potential_pt};
use crate::scalar::{re, Real};

/// Vacuum wavenumber, background permittivity and incidence angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OpticsMap<T> {
    pub k0: T,
    pub eps_b: T,
    pub theta: T,
}

impl<T: Real> OpticsMap<T> {
    pub fn new(k0: T, eps_b: T, theta: T) -> Result<Self> {
        if !(k0 > T::zero() && k0.is_finite()) {
            return Err(ScarfError::InvalidParams(format!("k0 must be > 0, got {k0}")));
        }
        if !(eps_b > T::zero() && eps_b.is_finite()) {
            return Err(ScarfError::InvalidParams(format!("eps_b must be > 0, got {eps_b}")));
        }
        if !(theta >= T::zero() && theta < T::FRAC_PI_2()) {
            return Err(ScarfError::InvalidParams(format!("theta must lie in [0, pi/2), got {theta}")));
        }
        Ok(Self { k0, eps_b, theta })
    }

    pub fn background_index(&self) -> T {
        self.eps_b.sqrt()
    }
}

/// `E = k0² ε_b cos²θ`.
pub fn energy_from_incidence<T: Real>(o: &OpticsMap<T>) -> T {
    let c = o.theta.cos();
    o.k0 * o.k0 * o.eps_b * c * c
}

/// `ε(x) = ε_b - V(x)/k0²`, with `V` the PT potential at `C = 0` and the
/// general (`W+`) potential otherwise.
pub fn permittivity<T: Real>(p: &ScarfParams<T>, o: &OpticsMap<T>, x: T) -> Complex<T> {
    let v = if p.is_real_phase() { potential_pt(p, x) } else { potential_general(p, Sign::Plus, x) };
    re(o.eps_b) - v / (o.k0 * o.k0)
}

/// Principal square root of the permittivity, `n² = n_b² - V/k0²`.
pub fn refractive_index<T: Real>(p: &ScarfParams<T>, o: &OpticsMap<T>, x: T) -> Complex<T> {
    permittivity(p, o, x).sqrt()
}

/// Index profile on a uniform grid. The branch of the square root follows
/// the principal value at the first sample and is kept continuous: a sample
/// whose phase jumps by more than π/2 from its neighbour is negated.
pub fn index_profile<T: Real>(
    p: &ScarfParams<T>,
    o: &OpticsMap<T>,
    xmin: T,
    xmax: T,
    points: usize,
) -> Result<FieldSample<T>> {
    let xs = uniform_grid(xmin, xmax, points)?;
    let mut values: Vec<Complex<T>> = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut n = refractive_index(p, o, x);
        if let Some(prev) = values.last() {
            if (n / prev).arg().abs() > T::FRAC_PI_2() {
                n = -n;
            }
        }
        values.push(n);
    }
    FieldSample::new(xs, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_examples() {
        assert_eq!(energy_from_incidence(&OpticsMap::new(1.0, 1.0, 0.0).unwrap()), 1.0);
        assert_eq!(energy_from_incidence(&OpticsMap::new(2.0, 2.25, 0.0).unwrap()), 9.0);
        let grazing = OpticsMap::new(1.0, 1.0, std::f64::consts::FRAC_PI_2 - 1e-9).unwrap();
        let e = energy_from_incidence(&grazing);
        assert!(e > 0.0 && e < 1e-17);
    }

    #[test]
    fn energy_decreases_with_angle() {
        let mut last = f64::INFINITY;
        for k in 0..100 {
            let th = k as f64 * 0.0157;
            let e = energy_from_incidence(&OpticsMap::new(1.3, 2.0, th).unwrap());
            assert!(e < last);
            last = e;
        }
    }

    #[test]
    fn invalid_optics_rejected() {
        assert!(OpticsMap::new(0.0, 1.0, 0.0).is_err());
        assert!(OpticsMap::new(1.0, -1.0, 0.0).is_err());
        assert!(OpticsMap::new(1.0, 1.0, std::f64::consts::FRAC_PI_2).is_err());
    }

    #[test]
    fn index_examples() {
        let p = ScarfParams::real(2.0, 1.0, 1.0).unwrap();
        let o = OpticsMap::new(10.0, 2.25, 0.0).unwrap();
        let n0 = refractive_index(&p, &o, 0.0);
        assert!((n0 * n0 - Complex::new(2.32, 0.0)).norm() < 1e-14);
        assert!((refractive_index(&p, &o, 60.0) - Complex::new(1.5, 0.0)).norm() < 1e-14);
        let (a, b) = (refractive_index(&p, &o, 0.9), refractive_index(&p, &o, -0.9));
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn profile_stays_on_one_branch() {
        // the permittivity crosses the negative real axis at x = 0, where the
        // principal root jumps from +i|n| to -i|n|
        let p = ScarfParams::<f64>::real(-0.4, 0.2, 1.0).unwrap();
        let o = OpticsMap::new(0.3, 1.0, 0.0).unwrap();
        let prof = index_profile(&p, &o, -6.0, 6.0, 1200).unwrap();
        let raw_jumps = prof
            .xs()
            .windows(2)
            .filter(|w| {
                let (a, b) = (refractive_index(&p, &o, w[0]), refractive_index(&p, &o, w[1]));
                (b / a).arg().abs() > std::f64::consts::FRAC_PI_2
            })
            .count();
        assert_eq!(raw_jumps, 1);
        for w in prof.values().windows(2) {
            assert!((w[1] / w[0]).arg().abs() <= std::f64::consts::FRAC_PI_2);
        }
        for (x, n) in prof.xs().iter().zip(prof.values()) {
            assert!((n * n - permittivity(&p, &o, *x)).norm() < 1e-12);
        }
    }
}
