//! Circulant preconditioner `P = C_n(f) + e e^T / N^2` applied through the
//! block FFT.

use faer::Mat;
use serde::Serialize;

use crate::c64;
use crate::error::{Error, Result};
use crate::linalg;
use crate::structured::{spectral_apply, BlockCirculant, BlockFft, BlockLattice};
use crate::symbol::MatrixSymbol;

use super::operator::Preconditioner;

pub struct StrangPreconditioner {
    lattice: BlockLattice,
    fft: BlockFft,
    inverses: Vec<Mat<c64>>,
    stats: StrangStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrangStats {
    pub zero_block_min_eigenvalue: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub condition: f64,
}

/// The `r = 0` spectral block after the rank-one correction.
pub fn corrected_zero_block(circ: &BlockCirculant) -> Mat<c64> {
    let lat = circ.lattice();
    let s = lat.s;
    let w = 1.0 / ((s * s) as f64 * lat.n_hat() as f64);
    let mut b = circ.spectral_blocks()[0].clone();
    for i in 0..s {
        for j in 0..s {
            b[(i, j)] += c64::new(w, 0.0);
        }
    }
    b
}

impl StrangPreconditioner {
    pub fn build(sym: &MatrixSymbol, lattice: BlockLattice) -> Result<Self> {
        let circ = BlockCirculant::new(sym.clone(), lattice)?;
        let zero = corrected_zero_block(&circ);
        let zero_eigs = linalg::herm_eigenvalues(zero.as_ref())?;
        let zmax = zero_eigs.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if zero_eigs[0] <= 1e-13 * zmax.max(1.0) {
            return Err(Error::SingularPreconditionerBlock { eigenvalues: zero_eigs });
        }
        let mut inverses = Vec::with_capacity(lattice.n_hat());
        let (mut lo, mut hi) = (zero_eigs[0], *zero_eigs.last().expect("nonempty"));
        for (r, b) in circ.spectral_blocks().iter().enumerate() {
            let block = if r == 0 { &zero } else { b };
            let ev = linalg::herm_eigenvalues(block.as_ref())?;
            if ev[0] <= 0.0 {
                return Err(Error::Singular(format!(
                    "spectral block {r} is not positive definite (min eigenvalue {:e})",
                    ev[0]
                )));
            }
            lo = lo.min(ev[0]);
            hi = hi.max(*ev.last().expect("nonempty"));
            inverses.push(linalg::hpd_inverse(block.as_ref())?);
        }
        let stats = StrangStats {
            zero_block_min_eigenvalue: zero_eigs[0],
            min_eigenvalue: lo,
            max_eigenvalue: hi,
            condition: hi / lo,
        };
        Ok(Self { lattice, fft: circ.fft().clone(), inverses, stats })
    }

    pub fn stats(&self) -> &StrangStats {
        &self.stats
    }

    pub fn lattice(&self) -> BlockLattice {
        self.lattice
    }

    pub fn solve(&self, r: &[f64]) -> Result<Vec<f64>> {
        self.lattice.check_len(r.len())?;
        let mut z = vec![0.0; r.len()];
        Preconditioner::apply(self, r, &mut z);
        Ok(z)
    }
}

impl Preconditioner for StrangPreconditioner {
    fn dim(&self) -> usize {
        self.lattice.order()
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        let rc: Vec<c64> = r.iter().map(|&v| c64::new(v, 0.0)).collect();
        for (zi, w) in z.iter_mut().zip(spectral_apply(&self.fft, &self.inverses, &rc)) {
            *zi = w.re;
        }
    }

    fn id(&self) -> &str {
        "strang"
    }
}
