use faer::Mat;

use crate::c64;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;
use crate::symbol::MatrixSymbol;

use super::{BlockCirculant, BlockLattice};

/// `T_n(f)`: block `(i, j)` is `f_{i-j}`.
#[derive(Clone, Debug)]
pub struct BlockToeplitz {
    lattice: BlockLattice,
    symbol: MatrixSymbol,
}

impl BlockToeplitz {
    pub fn new(symbol: MatrixSymbol, lattice: BlockLattice) -> Result<Self> {
        if symbol.s() != lattice.s {
            return Err(Error::DimensionMismatch { expected: lattice.s, actual: symbol.s() });
        }
        Ok(Self { lattice, symbol })
    }

    pub fn lattice(&self) -> BlockLattice {
        self.lattice
    }

    pub fn symbol(&self) -> &MatrixSymbol {
        &self.symbol
    }

    /// Visits every nonzero block as `(row block, col block, f_m)`.
    fn for_each_block(&self, mut f: impl FnMut(usize, usize, &[f64])) {
        let BlockLattice { n1, n2, .. } = self.lattice;
        for (m, b) in self.symbol.coefficients() {
            for i1 in 0..n1 as i64 {
                let j1 = i1 - m[0] as i64;
                if j1 < 0 || j1 >= n1 as i64 {
                    continue;
                }
                for i2 in 0..n2 as i64 {
                    let j2 = i2 - m[1] as i64;
                    if j2 < 0 || j2 >= n2 as i64 {
                        continue;
                    }
                    f(
                        self.lattice.block_start(i1 as usize, i2 as usize),
                        self.lattice.block_start(j1 as usize, j2 as usize),
                        &b.values,
                    );
                }
            }
        }
    }

    /// Direct stencil application, `y = T x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.lattice.check_len(x.len())?;
        let s = self.lattice.s;
        let mut y = vec![0.0; x.len()];
        self.for_each_block(|r, c, b| {
            for a in 0..s {
                let row = &b[a * s..(a + 1) * s];
                let mut acc = 0.0;
                for (bv, xv) in row.iter().zip(&x[c..c + s]) {
                    acc += bv * xv;
                }
                y[r + a] += acc;
            }
        });
        Ok(y)
    }

    /// `y = T x` through a circulant of doubled dimensions.
    pub fn matvec_embedded(&self, x: &[f64]) -> Result<Vec<f64>> {
        let lat = self.lattice;
        lat.check_len(x.len())?;
        let big = BlockLattice::new(2 * lat.n1, 2 * lat.n2, lat.s)?;
        let kept: Vec<_> = self
            .symbol
            .coefficients()
            .filter(|(j, _)| j[0].unsigned_abs() < lat.n1 as u32 && j[1].unsigned_abs() < lat.n2 as u32)
            .map(|(j, b)| (j, b.values.clone()))
            .collect();
        let circ = BlockCirculant::new(MatrixSymbol::from_f64(lat.s, kept)?, big)?;
        let mut xb = vec![c64::new(0.0, 0.0); big.order()];
        for i1 in 0..lat.n1 {
            for i2 in 0..lat.n2 {
                for t in 0..lat.s {
                    xb[big.index(i1, i2, t)] = c64::new(x[lat.index(i1, i2, t)], 0.0);
                }
            }
        }
        let yb = circ.matvec_complex(&xb)?;
        let mut y = vec![0.0; x.len()];
        for i1 in 0..lat.n1 {
            for i2 in 0..lat.n2 {
                for t in 0..lat.s {
                    y[lat.index(i1, i2, t)] = yb[big.index(i1, i2, t)].re;
                }
            }
        }
        Ok(y)
    }

    pub fn to_csr(&self) -> CsrMatrix {
        let s = self.lattice.s;
        let mut t = Vec::new();
        self.for_each_block(|r, c, b| {
            for a in 0..s {
                for d in 0..s {
                    let v = b[a * s + d];
                    if v != 0.0 {
                        t.push((r + a, c + d, v));
                    }
                }
            }
        });
        let n = self.lattice.order();
        CsrMatrix::from_triplets(n, n, &t).expect("indices in range")
    }

    pub fn to_dense(&self, guard: usize) -> Result<Mat<f64>> {
        let n = self.lattice.order();
        if n > guard {
            return Err(Error::SizeGuard { order: n, limit: guard });
        }
        let s = self.lattice.s;
        let mut m = Mat::<f64>::zeros(n, n);
        self.for_each_block(|r, c, b| {
            for a in 0..s {
                for d in 0..s {
                    m[(r + a, c + d)] += b[a * s + d];
                }
            }
        });
        Ok(m)
    }
}

pub fn toeplitz_dense(sym: &MatrixSymbol, lattice: BlockLattice, guard: usize) -> Result<Mat<f64>> {
    BlockToeplitz::new(sym.clone(), lattice)?.to_dense(guard)
}
