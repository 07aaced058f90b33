use faer::Mat;

use crate::dg::PressureOperator;
use crate::sparse::CsrMatrix;
use crate::structured::{BlockCirculant, BlockToeplitz};

/// A square real operator `y = A x`; implementations must be reentrant.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// `z = P^{-1} r`.
pub trait Preconditioner: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, r: &[f64], z: &mut [f64]);
    fn id(&self) -> &str;
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        self.nrows()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec(x, y);
    }
}

impl LinearOperator for PressureOperator {
    fn dim(&self) -> usize {
        self.lattice().order()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.apply_into(x, y);
    }
}

impl LinearOperator for BlockToeplitz {
    fn dim(&self) -> usize {
        self.lattice().order()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(&self.matvec(x).expect("length checked by caller"));
    }
}

impl LinearOperator for BlockCirculant {
    fn dim(&self) -> usize {
        self.lattice().order()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(&self.matvec(x).expect("length checked by caller"));
    }
}

pub struct DenseOperator(pub Mat<f64>);

impl LinearOperator for DenseOperator {
    fn dim(&self) -> usize {
        self.0.nrows()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..self.0.ncols()).map(|j| self.0[(i, j)] * x[j]).sum();
        }
    }
}

pub struct Diagonal(pub Vec<f64>);

impl LinearOperator for Diagonal {
    fn dim(&self) -> usize {
        self.0.len()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for ((yi, d), xi) in y.iter_mut().zip(&self.0).zip(x) {
            *yi = d * xi;
        }
    }
}

pub struct Identity(pub usize);

impl LinearOperator for Identity {
    fn dim(&self) -> usize {
        self.0
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(x);
    }
}

impl Preconditioner for Identity {
    fn dim(&self) -> usize {
        self.0
    }
    fn apply(&self, r: &[f64], z: &mut [f64]) {
        z.copy_from_slice(r);
    }
    fn id(&self) -> &str {
        "none"
    }
}
