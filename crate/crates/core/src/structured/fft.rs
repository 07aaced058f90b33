//! Two-dimensional DFT applied independently to each block coordinate.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::c64;

use super::BlockLattice;

#[derive(Clone)]
pub struct BlockFft {
    lattice: BlockLattice,
    fwd1: Arc<dyn Fft<f64>>,
    inv1: Arc<dyn Fft<f64>>,
    fwd2: Arc<dyn Fft<f64>>,
    inv2: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for BlockFft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlockFft").field("lattice", &self.lattice).finish()
    }
}

impl BlockFft {
    pub fn new(lattice: BlockLattice) -> Self {
        let mut planner = FftPlanner::<f64>::new();
        Self {
            lattice,
            fwd1: planner.plan_fft_forward(lattice.n1),
            inv1: planner.plan_fft_inverse(lattice.n1),
            fwd2: planner.plan_fft_forward(lattice.n2),
            inv2: planner.plan_fft_inverse(lattice.n2),
        }
    }

    pub fn lattice(&self) -> BlockLattice {
        self.lattice
    }

    /// `X_r = sum_i x_i exp(-i <i, theta_r>)`, unnormalized.
    pub fn forward(&self, data: &mut [c64]) {
        self.axis2(data, &*self.fwd2);
        self.axis1(data, &*self.fwd1);
    }

    /// `X_r = sum_i x_i exp(+i <i, theta_r>)`, unnormalized.
    pub fn inverse(&self, data: &mut [c64]) {
        self.axis2(data, &*self.inv2);
        self.axis1(data, &*self.inv1);
    }

    fn axis2(&self, data: &mut [c64], fft: &dyn Fft<f64>) {
        let BlockLattice { n1, n2, s } = self.lattice;
        if n2 == 1 {
            return;
        }
        let mut buf = vec![c64::new(0.0, 0.0); data.len()];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for t in 0..s {
                    buf[(i1 * s + t) * n2 + i2] = data[(i1 * n2 + i2) * s + t];
                }
            }
        }
        fft.process(&mut buf);
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for t in 0..s {
                    data[(i1 * n2 + i2) * s + t] = buf[(i1 * s + t) * n2 + i2];
                }
            }
        }
    }

    fn axis1(&self, data: &mut [c64], fft: &dyn Fft<f64>) {
        let BlockLattice { n1, n2, s } = self.lattice;
        if n1 == 1 {
            return;
        }
        let mut buf = vec![c64::new(0.0, 0.0); data.len()];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for t in 0..s {
                    buf[(i2 * s + t) * n1 + i1] = data[(i1 * n2 + i2) * s + t];
                }
            }
        }
        fft.process(&mut buf);
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for t in 0..s {
                    data[(i1 * n2 + i2) * s + t] = buf[(i2 * s + t) * n1 + i1];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matches_naive_dft() {
        let lat = BlockLattice::new(3, 5, 2).unwrap();
        let x: Vec<c64> = (0..lat.order()).map(|k| c64::new((k as f64).sin(), (k as f64 * 0.3).cos())).collect();
        let mut y = x.clone();
        BlockFft::new(lat).forward(&mut y);
        for r1 in 0..3 {
            for r2 in 0..5 {
                for t in 0..2 {
                    let mut acc = c64::new(0.0, 0.0);
                    for i1 in 0..3 {
                        for i2 in 0..5 {
                            let ph = -2.0 * PI * (i1 * r1) as f64 / 3.0 - 2.0 * PI * (i2 * r2) as f64 / 5.0;
                            acc += x[lat.index(i1, i2, t)] * c64::new(ph.cos(), ph.sin());
                        }
                    }
                    assert!((acc - y[lat.index(r1, r2, t)]).norm() < 1e-12);
                }
            }
        }
    }
}
