//! Outlier statistics and the per-eigenvalue spectral report.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::structured::BlockLattice;
use crate::symbol::EigenSample;

use super::counts::{block_partition, derive_groups, eval_set, group_intervals, grouped_counts, Group, IntervalCount, INTERVAL_SLACK};
use super::matching::match_eigs;
use super::reference::ReferenceIntervals;

/// Tolerance used to decide whether consecutive reference ranges overlap.
pub const GROUP_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct OutlierReport {
    /// (a) `n_hat - #{lambda in [m_1, M_1]}`.
    pub deficit: i64,
    /// (b) `#{lambda > M_s + slack}`.
    pub exceedance: usize,
    /// (c) eigenvalues whose matching residual exceeds the local sample spacing, per group.
    pub residual_per_group: Vec<usize>,
    pub residual_total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenRow {
    pub index: usize,
    pub value: f64,
    /// 1-based group of the block partition.
    pub block: usize,
    /// Matched node: 1-based eigenvalue function and grid indices.
    pub l: usize,
    pub j: usize,
    pub k: usize,
    pub residual: f64,
    pub outside_interval: bool,
    pub above_max: bool,
    pub residual_outlier: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub matrix: String,
    pub lattice: BlockLattice,
    pub reference_n: usize,
    pub reference_intervals: Vec<(f64, f64)>,
    pub groups: Vec<Group>,
    pub interval_counts: Vec<IntervalCount>,
    pub partition_sizes: Vec<usize>,
    pub outliers: OutlierReport,
    pub rows: Vec<EigenRow>,
}

/// `eigs` ascending; `local` sampled on the operator's own grid size.
pub fn build_report(
    matrix: &str,
    eigs: &[f64],
    lattice: BlockLattice,
    reference: &ReferenceIntervals,
    local: &EigenSample,
) -> Result<SpectralReport> {
    lattice.check_len(eigs.len())?;
    let s = lattice.s;
    if reference.intervals.len() != s || local.s != s {
        return Err(Error::DimensionMismatch { expected: s, actual: reference.intervals.len() });
    }
    if local.n * local.n != lattice.n_hat() {
        return Err(Error::InvalidArgument(format!(
            "local sample has {} nodes, lattice has {}",
            local.n * local.n,
            lattice.n_hat()
        )));
    }
    let n_hat = lattice.n_hat();
    let iv = &reference.intervals;
    let groups = derive_groups(iv, GROUP_TOL);
    let gi = group_intervals(iv, &groups);
    let interval_counts = grouped_counts(eigs, iv, &groups, n_hat);
    let parts = block_partition(&groups, n_hat);
    let m_max = iv[s - 1].1;

    let mut rows = Vec::with_capacity(eigs.len());
    let mut residual_per_group = Vec::with_capacity(groups.len());
    for (t, (g, range)) in groups.iter().zip(&parts).enumerate() {
        let set = eval_set(local, *g);
        let values: Vec<f64> = set.iter().map(|p| p.value).collect();
        let block = &eigs[range.clone()];
        let matches = match_eigs(block, &values)?;
        let mut outliers = 0;
        for (off, (lam, m)) in block.iter().zip(&matches).enumerate() {
            let sp = set[m.sample_index];
            let residual_outlier = m.residual > m.local_spacing;
            outliers += residual_outlier as usize;
            let (lo, hi) = gi[t];
            rows.push(EigenRow {
                index: range.start + off,
                value: *lam,
                block: t + 1,
                l: sp.l + 1,
                j: sp.j,
                k: sp.k,
                residual: m.residual,
                outside_interval: *lam < lo - INTERVAL_SLACK || *lam > hi + INTERVAL_SLACK,
                above_max: *lam > m_max + INTERVAL_SLACK,
                residual_outlier,
            });
        }
        residual_per_group.push(outliers);
    }
    let outliers = OutlierReport {
        deficit: outlier_counts(eigs, n_hat, iv).0,
        exceedance: eigs.iter().filter(|&&v| v > m_max + INTERVAL_SLACK).count(),
        residual_total: residual_per_group.iter().sum(),
        residual_per_group,
    };
    Ok(SpectralReport {
        matrix: matrix.to_string(),
        lattice,
        reference_n: reference.n,
        reference_intervals: iv.clone(),
        groups,
        interval_counts,
        partition_sizes: parts.iter().map(|r| r.len()).collect(),
        outliers,
        rows,
    })
}

/// Definitions (a) and (b) only; no matching.
pub fn outlier_counts(eigs: &[f64], n_hat: usize, intervals: &[(f64, f64)]) -> (i64, usize) {
    let (m1, big_m1) = intervals[0];
    let inside = eigs.iter().filter(|&&v| v >= m1 - INTERVAL_SLACK && v <= big_m1 + INTERVAL_SLACK).count();
    let top = intervals[intervals.len() - 1].1;
    let above = eigs.iter().filter(|&&v| v > top + INTERVAL_SLACK).count();
    (n_hat as i64 - inside as i64, above)
}

impl SpectralReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "index,value,block,l,j,k,residual,outside_interval,above_max,residual_outlier")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{:?},{},{},{},{},{:?},{},{},{}",
                r.index,
                r.value,
                r.block,
                r.l,
                r.j,
                r.k,
                r.residual,
                r.outside_interval as u8,
                r.above_max as u8,
                r.residual_outlier as u8
            )?;
        }
        Ok(())
    }
}
