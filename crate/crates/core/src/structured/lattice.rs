use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlockLattice {
    pub n1: usize,
    pub n2: usize,
    pub s: usize,
}

impl BlockLattice {
    pub fn new(n1: usize, n2: usize, s: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 || s == 0 {
            return Err(Error::InvalidArgument(format!("lattice dimensions must be positive: ({n1}, {n2}, {s})")));
        }
        Ok(Self { n1, n2, s })
    }

    pub fn square(n: usize, s: usize) -> Result<Self> {
        Self::new(n, n, s)
    }

    pub fn n_hat(&self) -> usize {
        self.n1 * self.n2
    }

    /// Matrix order `N = s * n1 * n2`.
    pub fn order(&self) -> usize {
        self.s * self.n_hat()
    }

    pub fn index(&self, i1: usize, i2: usize, t: usize) -> usize {
        (i1 * self.n2 + i2) * self.s + t
    }

    pub fn block_start(&self, i1: usize, i2: usize) -> usize {
        self.index(i1, i2, 0)
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), actual: len });
        }
        Ok(())
    }
}
