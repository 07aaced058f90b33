//! Interval counting and the block partition of a sorted spectrum.

use serde::Serialize;

use crate::symbol::EigenSample;

/// Endpoint slack for closed-interval membership.
pub const INTERVAL_SLACK: f64 = 1e-12;

pub fn interval_counts(eigs: &[f64], intervals: &[(f64, f64)]) -> Vec<usize> {
    intervals
        .iter()
        .map(|&(lo, hi)| eigs.iter().filter(|&&v| v >= lo - INTERVAL_SLACK && v <= hi + INTERVAL_SLACK).count())
        .collect()
}

/// A run of consecutive eigenvalue functions `l_first..=l_last` (0-based)
/// whose ranges overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Group {
    pub first: usize,
    pub last: usize,
}

impl Group {
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Merges `l` and `l + 1` whenever `m_{l+1} < M_l - tol`; touching or
/// separated ranges start a new group.
pub fn derive_groups(intervals: &[(f64, f64)], tol: f64) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    let mut hi = f64::NEG_INFINITY;
    for (l, &(m, big_m)) in intervals.iter().enumerate() {
        match out.last_mut() {
            Some(g) if m < hi - tol => {
                g.last = l;
                hi = hi.max(big_m);
            }
            _ => {
                out.push(Group { first: l, last: l });
                hi = big_m;
            }
        }
    }
    out
}

/// `[m_first, M_last]` of each group.
pub fn group_intervals(intervals: &[(f64, f64)], groups: &[Group]) -> Vec<(f64, f64)> {
    groups.iter().map(|g| (intervals[g.first].0, intervals[g.last].1)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalCount {
    /// 1-based eigenvalue-function labels covered by the interval.
    pub l_first: usize,
    pub l_last: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    pub expected: usize,
    pub deviation: i64,
}

/// Counts per group interval against the expectation `len(group) * n_hat`.
pub fn grouped_counts(eigs: &[f64], intervals: &[(f64, f64)], groups: &[Group], n_hat: usize) -> Vec<IntervalCount> {
    let gi = group_intervals(intervals, groups);
    let counts = interval_counts(eigs, &gi);
    groups
        .iter()
        .zip(gi)
        .zip(counts)
        .map(|((g, (lower, upper)), count)| {
            let expected = g.len() * n_hat;
            IntervalCount {
                l_first: g.first + 1,
                l_last: g.last + 1,
                lower,
                upper,
                count,
                expected,
                deviation: count as i64 - expected as i64,
            }
        })
        .collect()
}

/// Index ranges `Bl_t` into the ascending spectrum: group `t` takes the next
/// `len(group) * n_hat` eigenvalues.
pub fn block_partition(groups: &[Group], n_hat: usize) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    groups
        .iter()
        .map(|g| {
            let r = start..start + g.len() * n_hat;
            start = r.end;
            r
        })
        .collect()
}

/// One entry of `Eval_t`: a sample value and where it came from.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SamplePoint {
    pub value: f64,
    /// 0-based eigenvalue-function index.
    pub l: usize,
    pub j: usize,
    pub k: usize,
}

/// `Eval_t`: the samples of the group's eigenvalue functions in `l`-major,
/// then node order. The position in this list is the grid index used for
/// tie-breaking.
pub fn eval_set(sample: &EigenSample, g: Group) -> Vec<SamplePoint> {
    let mut out = Vec::with_capacity(g.len() * sample.n * sample.n);
    for l in g.first..=g.last {
        for (idx, &value) in sample.samples[l].iter().enumerate() {
            let (j, k) = sample.node(idx);
            out.push(SamplePoint { value, l, j, k });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_line_interval_counts_everything() {
        let eigs = [-3.0, 0.0, 1e9];
        assert_eq!(interval_counts(&eigs, &[(f64::NEG_INFINITY, f64::INFINITY)]), vec![3]);
    }

    #[test]
    fn slack_admits_endpoint_roundoff() {
        let eigs = [1.0 - 5e-13, 2.0 + 5e-13, 2.0 + 1e-9];
        assert_eq!(interval_counts(&eigs, &[(1.0, 2.0)]), vec![2]);
    }

    #[test]
    fn grouping_by_overlap() {
        let iv = [(0.0, 1.0), (1.5, 3.0), (2.0, 4.0), (4.0, 5.0)];
        let g = derive_groups(&iv, 1e-9);
        assert_eq!(g, vec![Group { first: 0, last: 0 }, Group { first: 1, last: 2 }, Group { first: 3, last: 3 }]);
        assert_eq!(block_partition(&g, 4), vec![0..4, 4..12, 12..16]);
    }
}
