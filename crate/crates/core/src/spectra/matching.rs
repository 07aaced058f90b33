//! Nearest-sample matching of eigenvalues to symbol samples.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Match {
    /// Position of the matched sample in the input list.
    pub sample_index: usize,
    pub residual: f64,
    /// Half the distance between the distinct sample values that bracket the
    /// matched one (one-sided at the ends).
    pub local_spacing: f64,
}

/// For each eigenvalue, the nearest sample value; ties go to the lowest
/// sample index.
pub fn match_eigs(block: &[f64], samples: &[f64]) -> Result<Vec<Match>> {
    if block.is_empty() || samples.is_empty() {
        return Err(Error::InvalidArgument("matching needs nonempty eigenvalue and sample lists".into()));
    }
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[a].total_cmp(&samples[b]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| samples[i]).collect();
    // first position of the run of equal values containing `p`
    let run_start = |p: usize| sorted.partition_point(|&v| v < sorted[p]);
    let run_end = |p: usize| sorted.partition_point(|&v| v <= sorted[p]);
    let spacing = |p: usize| {
        let lo = run_start(p);
        let hi = run_end(p);
        let below = if lo > 0 { Some(sorted[p] - sorted[lo - 1]) } else { None };
        let above = if hi < sorted.len() { Some(sorted[hi] - sorted[p]) } else { None };
        match (below, above) {
            (Some(a), Some(b)) => 0.5 * (a + b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => 0.0,
        }
    };
    Ok(block
        .iter()
        .map(|&lam| {
            let pos = sorted.partition_point(|&v| v < lam);
            let mut best: Option<(f64, usize, usize)> = None;
            for cand in [pos.checked_sub(1), (pos < sorted.len()).then_some(pos)].into_iter().flatten() {
                let p = run_start(cand);
                let d = (sorted[p] - lam).abs();
                let idx = order[p];
                best = match best {
                    Some((bd, bi, bp)) if bd < d || (bd == d && bi < idx) => Some((bd, bi, bp)),
                    _ => Some((d, idx, p)),
                };
            }
            let (residual, sample_index, p) = best.expect("nonempty samples");
            Match { sample_index, residual, local_spacing: spacing(p) }
        })
        .collect())
}
