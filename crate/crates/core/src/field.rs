//! Sampled complex fields on uniform grids.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, ScarfError};
use crate::scalar::Real;

/// Positions with complex amplitudes: potentials, superpotentials,
/// eigenfunctions or index profiles.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldSample<T> {
    xs: Vec<T>,
    values: Vec<Complex<T>>,
}

/// `points` equally spaced positions covering `[xmin, xmax]`.
pub fn uniform_grid<T: Real>(xmin: T, xmax: T, points: usize) -> Result<Vec<T>> {
    if points < 2 || !(xmax > xmin) || !xmin.is_finite() || !xmax.is_finite() {
        return Err(ScarfError::InvalidInput(format!(
            "need points >= 2 and xmin < xmax, got {points} points on [{xmin}, {xmax}]"
        )));
    }
    let step = (xmax - xmin) / T::of(points - 1);
    Ok((0..points).map(|k| if k == points - 1 { xmax } else { xmin + step * T::of(k) }).collect())
}

impl<T: Real> FieldSample<T> {
    pub fn new(xs: Vec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(ScarfError::InvalidInput(format!("{} positions but {} values", xs.len(), values.len())));
        }
        if xs.len() >= 2 {
            let h = xs[1] - xs[0];
            if !(h > T::zero()) {
                return Err(ScarfError::InvalidInput("positions must increase".into()));
            }
            let scale = xs.iter().fold(T::zero(), |m, x| m.max(x.abs()));
            let tol = T::lit(1e-12).max(T::lit(16.0) * T::epsilon() * scale / h);
            for w in xs.windows(2) {
                let d = w[1] - w[0];
                if !(d > T::zero()) || ((d - h) / h).abs() > tol {
                    return Err(ScarfError::InvalidInput("positions must be uniformly spaced".into()));
                }
            }
        }
        Ok(Self { xs, values })
    }

    pub fn from_fn(xmin: T, xmax: T, points: usize, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let xs = uniform_grid(xmin, xmax, points)?;
        let values = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, values)
    }

    pub fn try_from_fn(xmin: T, xmax: T, points: usize, f: impl Fn(T) -> Result<Complex<T>>) -> Result<Self> {
        let xs = uniform_grid(xmin, xmax, points)?;
        let values = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(xs, values)
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn spacing(&self) -> Option<T> {
        (self.xs.len() >= 2).then(|| self.xs[1] - self.xs[0])
    }

    /// Index of the largest `|value|` (first one on ties).
    pub fn argmax_abs(&self) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (k, v) in self.values.iter().enumerate() {
            let m = v.norm();
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((k, m));
            }
        }
        best.map(|(k, _)| k)
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Rescales so that `max |value| = 1`; a zero field is returned as is.
    pub fn sup_normalized(mut self) -> Self {
        let m = self.max_abs();
        if m > T::zero() {
            for v in &mut self.values {
                *v = *v / m;
            }
        }
        self
    }

    pub fn into_parts(self) -> (Vec<T>, Vec<Complex<T>>) {
        (self.xs, self.values)
    }
}
