//! Structure of `E_n = K_N - T_n(f)` for the Dirichlet operator.

use faer::Mat;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::sparse::CsrMatrix;

use super::pressure::{BoundaryCondition, PressureOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Left,
    Center,
    Right,
}

/// Which index pairing the flip relation `e^(r) = J e^(l) J` follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipPairing {
    /// `e^(r)_1 ~ e^(l)_n`, `e^(r)_n ~ e^(l)_1`, `e^(r)_i ~ e^(l)_i` otherwise.
    Crossed,
    /// `e^(r)_i ~ e^(l)_i` for every `i`.
    Identity,
    Both,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct InnerBlockReport {
    pub i1: usize,
    pub i2: usize,
    pub min_eigenvalue: f64,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub n1: usize,
    pub n2: usize,
    pub block_diagonal: bool,
    pub inner_block_diagonal: bool,
    pub kinds: Vec<BlockKind>,
    pub center_groups_identical: bool,
    pub center_interior_zero: bool,
    pub left_interior_constant: bool,
    pub right_interior_constant: bool,
    pub flip_pairing: FlipPairing,
    pub center_flip_holds: bool,
    pub min_eigenvalue: f64,
    pub psd: bool,
    pub rank: usize,
    pub nonzero_blocks: Vec<InnerBlockReport>,
}

pub struct BoundaryPart {
    pub e: CsrMatrix,
    /// `blocks[i1][i2]`: the `s x s` diagonal block of `E_n` at cell `(i1, i2)`, row-major.
    pub blocks: Vec<Vec<Vec<f64>>>,
    pub report: BoundaryReport,
}

const RANK_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-12;

fn flipped(b: &[f64], s: usize) -> Vec<f64> {
    (0..s * s).map(|k| b[(s - 1 - k / s) * s + (s - 1 - k % s)]).collect()
}

fn same(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-13 * (1.0 + x.abs()))
}

fn is_zero(a: &[f64]) -> bool {
    a.iter().all(|v| v.abs() <= 1e-14)
}

pub fn extract_boundary_part(op: &PressureOperator) -> Result<BoundaryPart> {
    if op.bc() != BoundaryCondition::Dirichlet {
        return Err(Error::InvalidArgument("boundary extraction needs a Dirichlet operator".into()));
    }
    let lat = op.lattice();
    let (n1, n2, s) = (lat.n1, lat.n2, lat.s);
    let e = op.to_csr().sub(&op.toeplitz_part().to_csr())?;

    let group = s * n2;
    let mut block_diagonal = true;
    let mut inner_block_diagonal = true;
    let mut blocks = vec![vec![vec![0.0; s * s]; n2]; n1];
    for (r, c, v) in e.triplets() {
        if r / group != c / group {
            block_diagonal = false;
            continue;
        }
        if r / s != c / s {
            inner_block_diagonal = false;
            continue;
        }
        blocks[r / group][(r % group) / s][(r % s) * s + c % s] = v;
    }

    let kinds: Vec<BlockKind> = (0..n1)
        .map(|g| match g {
            0 => BlockKind::Left,
            g if g + 1 == n1 => BlockKind::Right,
            _ => BlockKind::Center,
        })
        .collect();
    let (left, right) = (&blocks[0], &blocks[n1 - 1]);
    let center = &blocks[1];
    let center_groups_identical =
        (1..n1 - 1).all(|g| (0..n2).all(|i| same(&blocks[g][i], &center[i])));
    let center_interior_zero = (1..n2 - 1).all(|i| is_zero(&center[i]));
    let left_interior_constant = (1..n2 - 1).all(|i| same(&left[i], &left[1]));
    let right_interior_constant = (1..n2 - 1).all(|i| same(&right[i], &right[1]));

    let mid_ok = (1..n2 - 1).all(|i| same(&right[i], &flipped(&left[i], s)));
    let crossed = mid_ok
        && same(&right[0], &flipped(&left[n2 - 1], s))
        && same(&right[n2 - 1], &flipped(&left[0], s));
    let identity = mid_ok
        && same(&right[0], &flipped(&left[0], s))
        && same(&right[n2 - 1], &flipped(&left[n2 - 1], s));
    let flip_pairing = match (crossed, identity) {
        (true, true) => FlipPairing::Both,
        (true, false) => FlipPairing::Crossed,
        (false, true) => FlipPairing::Identity,
        (false, false) => FlipPairing::Neither,
    };
    let center_flip_holds = same(&center[n2 - 1], &flipped(&center[0], s));

    let mut nonzero = Vec::new();
    let mut svs = Vec::new();
    for (i1, row) in blocks.iter().enumerate() {
        for (i2, b) in row.iter().enumerate() {
            if is_zero(b) {
                continue;
            }
            let m = Mat::<f64>::from_fn(s, s, |a, c| b[a * s + c]);
            let ev = linalg::sym_eigenvalues(m.as_ref())?;
            let sv = linalg::singular_values(m.as_ref())?;
            nonzero.push((i1, i2, ev[0], sv.clone()));
            svs.extend(sv);
        }
    }
    let norm = svs.iter().cloned().fold(0.0_f64, f64::max);
    let cut = RANK_TOL * norm;
    let nonzero_blocks: Vec<InnerBlockReport> = nonzero
        .into_iter()
        .map(|(i1, i2, min_eigenvalue, sv)| InnerBlockReport {
            i1,
            i2,
            min_eigenvalue,
            rank: sv.iter().filter(|&&v| v > cut).count(),
        })
        .collect();
    let rank = nonzero_blocks.iter().map(|b| b.rank).sum();
    let min_eigenvalue = nonzero_blocks.iter().map(|b| b.min_eigenvalue).fold(0.0_f64, f64::min);
    let report = BoundaryReport {
        n1,
        n2,
        block_diagonal,
        inner_block_diagonal,
        kinds,
        center_groups_identical,
        center_interior_zero,
        left_interior_constant,
        right_interior_constant,
        flip_pairing,
        center_flip_holds,
        min_eigenvalue,
        psd: min_eigenvalue >= -PSD_TOL * norm.max(1.0),
        rank,
        nonzero_blocks,
    };
    Ok(BoundaryPart { e, blocks, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_is_rejected() {
        let op = PressureOperator::dg(2, 4, 4, BoundaryCondition::Periodic).unwrap();
        assert!(extract_boundary_part(&op).is_err());
    }

    #[test]
    fn structure_at_n6() {
        let op = PressureOperator::dg(2, 6, 6, BoundaryCondition::Dirichlet).unwrap();
        let r = extract_boundary_part(&op).unwrap().report;
        assert!(r.block_diagonal && r.inner_block_diagonal);
        assert!(r.center_groups_identical && r.center_interior_zero);
        assert!(r.left_interior_constant && r.right_interior_constant);
        assert_eq!(r.flip_pairing, FlipPairing::Crossed);
        assert!(r.center_flip_holds && r.psd);
        assert_eq!(r.rank, 36 * 6 - 36);
    }
}
