//! Operator spectra against symbol samples: counts, block partition,
//! matching and outliers.

mod counts;
mod dense;
mod matching;
mod reference;
mod report;
mod scaling;

pub use counts::{
    block_partition, derive_groups, eval_set, group_intervals, grouped_counts, interval_counts, Group, IntervalCount,
    SamplePoint, INTERVAL_SLACK,
};
pub use dense::{commutes, dense_spectrum, symmetric_spectrum, tensor_reflections, SPECTRUM_GUARD};
pub use matching::{match_eigs, Match};
pub use reference::{default_cache_dir, CacheStatus, ReferenceIntervals, REFERENCE_N};
pub use report::{build_report, outlier_counts, EigenRow, OutlierReport, SpectralReport, GROUP_TOL};
pub use scaling::{lower_bound_holds, minimal_eig_scaling, ScalingFit};

use crate::error::Result;
use crate::sparse::CsrMatrix;
use crate::structured::BlockLattice;

/// Ascending spectrum of a symmetric operator on a tensor block lattice,
/// using the reflection sectors when they apply.
pub fn lattice_spectrum(a: &CsrMatrix, lattice: BlockLattice, guard: usize) -> Result<Vec<f64>> {
    let refl = tensor_reflections(lattice);
    symmetric_spectrum(a, refl.as_ref(), guard)
}
