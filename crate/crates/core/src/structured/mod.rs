//! Two-level block Toeplitz and block circulant matrices generated by a symbol.
//!
//! Unknowns are ordered `idx = (i1 * n2 + i2) * s + t`: block coordinate
//! fastest, then level 2, then level 1.

mod circulant;
mod fft;
mod lattice;
mod toeplitz;

pub use circulant::{circulant_dense, spectral_apply, BlockCirculant};
pub use fft::BlockFft;
pub use lattice::BlockLattice;
pub use toeplitz::{toeplitz_dense, BlockToeplitz};

/// Default row limit for dense Toeplitz/circulant exports.
pub const DENSE_GUARD: usize = 40_000;
