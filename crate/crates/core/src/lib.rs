//! Spectral analysis and circulant-preconditioned solvers for two-level block
//! Toeplitz sequences generated by matrix-valued trigonometric polynomials,
//! with the staggered DG pressure operator as the worked instance.

pub mod dg;
pub mod error;
pub mod krylov;
pub mod linalg;
pub mod rational;
pub mod sparse;
pub mod spectra;
pub mod structured;
pub mod symbol;

pub use error::{Error, Result};
pub use faer::c64;
