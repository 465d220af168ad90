//! Numerical toolkit for the `L^p` spectrum of the Dirac operator on
//! `H_c^{k+1} × N`.

pub mod clifford;
pub mod closed_spectra;
pub mod error;
pub mod halfspace_weyl;
pub mod ode;
pub mod quadrature;
pub mod radial_modes;
pub mod spectral_region;

pub use error::{Error, Result};
