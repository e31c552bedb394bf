//! Closed-form spectra, Jacobi polynomials and eigenfunctions.

mod eigenfunctions;
mod eigenvalues;
mod jacobi;
mod ladder;

pub use eigenfunctions::{eigenfunction, eigenfunction_broken, eigenfunction_ss, sample_eigenfunction, Normalize};
pub use eigenvalues::{
    eigenfunction_energy, eigenvalues_complex, eigenvalues_real, NMax, SpectrumEntry, SpectrumResult,
};
pub use jacobi::{jacobi, jacobi_sum, JacobiArgs, JacobiScalar};
pub use ladder::{susy_ladder_check, LadderLevel, LadderOptions, LadderReport};
