use std::sync::OnceLock;

use faer::Mat;
use rayon::prelude::*;

use crate::c64;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;
use crate::symbol::MatrixSymbol;

use super::{BlockFft, BlockLattice};

/// `C_n(f)`: block `(i, j)` is the sum of `f_m` over `m = i - j (mod n)`.
#[derive(Debug)]
pub struct BlockCirculant {
    lattice: BlockLattice,
    symbol: MatrixSymbol,
    fft: BlockFft,
    blocks: OnceLock<Vec<Mat<c64>>>,
}

impl BlockCirculant {
    pub fn new(symbol: MatrixSymbol, lattice: BlockLattice) -> Result<Self> {
        if symbol.s() != lattice.s {
            return Err(Error::DimensionMismatch { expected: lattice.s, actual: symbol.s() });
        }
        Ok(Self { fft: BlockFft::new(lattice), lattice, symbol, blocks: OnceLock::new() })
    }

    pub fn lattice(&self) -> BlockLattice {
        self.lattice
    }

    pub fn symbol(&self) -> &MatrixSymbol {
        &self.symbol
    }

    pub fn fft(&self) -> &BlockFft {
        &self.fft
    }

    /// `theta_r = (2 pi r1 / n1, 2 pi r2 / n2)` for flat `r = r1 * n2 + r2`.
    pub fn theta(&self, r: usize) -> [f64; 2] {
        let BlockLattice { n1, n2, .. } = self.lattice;
        let tau = 2.0 * std::f64::consts::PI;
        [tau * (r / n2) as f64 / n1 as f64, tau * (r % n2) as f64 / n2 as f64]
    }

    /// `S_n(f)(theta_r)` for every `r`, computed from the folded coefficients
    /// so that it is exact for any `n`.
    pub fn spectral_blocks(&self) -> &[Mat<c64>] {
        self.blocks.get_or_init(|| {
            let BlockLattice { n1, n2, s } = self.lattice;
            let folded = self.symbol.folded([n1, n2]);
            let coeffs: Vec<(Vec<i32>, &Vec<f64>)> =
                folded.iter().map(|(k, v)| (vec![k[0] as i32, k[1] as i32], v)).collect();
            (0..n1 * n2)
                .into_par_iter()
                .map(|r| {
                    let th = self.theta(r);
                    let mut m = Mat::<c64>::zeros(s, s);
                    for (k, v) in &coeffs {
                        let ph = k[0] as f64 * th[0] + k[1] as f64 * th[1];
                        let w = c64::new(ph.cos(), ph.sin());
                        for a in 0..s {
                            for b in 0..s {
                                if v[a * s + b] != 0.0 {
                                    m[(a, b)] += w * v[a * s + b];
                                }
                            }
                        }
                    }
                    for a in 0..s {
                        m[(a, a)].im = 0.0;
                        for b in a + 1..s {
                            let avg = (m[(a, b)] + m[(b, a)].conj()) * 0.5;
                            m[(a, b)] = avg;
                            m[(b, a)] = avg.conj();
                        }
                    }
                    m
                })
                .collect()
        })
    }

    pub fn matvec_complex(&self, x: &[c64]) -> Result<Vec<c64>> {
        self.lattice.check_len(x.len())?;
        Ok(spectral_apply(&self.fft, self.spectral_blocks(), x))
    }

    /// Real part of `C x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let xc: Vec<c64> = x.iter().map(|&v| c64::new(v, 0.0)).collect();
        Ok(self.matvec_complex(&xc)?.into_iter().map(|z| z.re).collect())
    }

    fn folded_blocks(&self, mut f: impl FnMut(usize, usize, &[f64])) {
        let BlockLattice { n1, n2, .. } = self.lattice;
        let folded = self.symbol.folded([n1, n2]);
        for (m, v) in &folded {
            for i1 in 0..n1 {
                for i2 in 0..n2 {
                    let j1 = (i1 + n1 - m[0]) % n1;
                    let j2 = (i2 + n2 - m[1]) % n2;
                    f(self.lattice.block_start(i1, i2), self.lattice.block_start(j1, j2), v);
                }
            }
        }
    }

    pub fn to_csr(&self) -> CsrMatrix {
        let s = self.lattice.s;
        let mut t = Vec::new();
        self.folded_blocks(|r, c, b| {
            for a in 0..s {
                for d in 0..s {
                    if b[a * s + d] != 0.0 {
                        t.push((r + a, c + d, b[a * s + d]));
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
        self.folded_blocks(|r, c, b| {
            for a in 0..s {
                for d in 0..s {
                    m[(r + a, c + d)] += b[a * s + d];
                }
            }
        });
        Ok(m)
    }
}

pub fn circulant_dense(sym: &MatrixSymbol, lattice: BlockLattice, guard: usize) -> Result<Mat<f64>> {
    BlockCirculant::new(sym.clone(), lattice)?.to_dense(guard)
}

/// Inverse DFT, per-block multiply by `B_r`, forward DFT, divide by `n_hat`.
pub fn spectral_apply(fft: &BlockFft, blocks: &[Mat<c64>], x: &[c64]) -> Vec<c64> {
    let lat = fft.lattice();
    let s = lat.s;
    let mut z = x.to_vec();
    fft.inverse(&mut z);
    let mut w = vec![c64::new(0.0, 0.0); z.len()];
    w.par_chunks_mut(s).zip(z.par_chunks(s)).zip(blocks.par_iter()).for_each(|((out, inp), b)| {
        for a in 0..s {
            let mut acc = c64::new(0.0, 0.0);
            for (d, v) in inp.iter().enumerate() {
                acc += b[(a, d)] * v;
            }
            out[a] = acc;
        }
    });
    fft.forward(&mut w);
    let scale = 1.0 / lat.n_hat() as f64;
    for v in &mut w {
        *v *= scale;
    }
    w
}
