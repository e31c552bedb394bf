//! Spectral theory of the complex PT-symmetric Scarf II potential.
//!
//! The closed forms (superpotentials, real and complex spectra, Jacobi
//! eigenfunctions, isospectral deformations, parameter-space geometry) live
//! next to an independent finite-difference eigensolver and a scattering
//! integrator that check them.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deform;
pub mod domains;
pub mod error;
pub mod field;
pub mod hyperbolic;
pub mod optics;
pub mod oracle;
pub mod params;
pub mod potential;
pub mod scalar;
pub mod scatter;
pub mod spectra;

pub use error::{Result, ScarfError};
pub use num_complex::Complex;
pub use params::{Branch, ScarfParams, Sign, TOL_LINE};
pub use potential::PotentialKind;
pub use scalar::Real;

pub type C64 = Complex<f64>;
pub type Params = ScarfParams<f64>;
pub type Optics = optics::OpticsMap<f64>;
pub type Field = field::FieldSample<f64>;
pub type Spectrum = spectra::SpectrumResult<f64>;
pub type Scattering = scatter::ScatteringResult<f64>;
pub type Poly = hyperbolic::SechTanhPoly<f64>;
pub type TriDiag = oracle::TriDiag<f64>;
pub type Grid = oracle::Grid<f64>;
