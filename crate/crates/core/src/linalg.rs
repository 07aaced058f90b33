//! Thin wrappers over faer's dense kernels.
//!
//! All calls run with sequential parallelism so results do not depend on the
//! thread pool.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::linalg::svd::{self, ComputeSvdVectors};
use faer::prelude::*;
use faer::diag::Diag;
use faer::{Mat, MatRef, Par, Side};

use crate::error::{Error, Result};

/// Ascending eigenvalues of a real symmetric matrix (lower triangle is read).
pub fn sym_eigenvalues(a: MatRef<'_, f64>) -> Result<Vec<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: a.ncols() });
    }
    let mut s = Diag::<f64>::zeros(n);
    let par = Par::Seq;
    let req = evd::self_adjoint_evd_scratch::<f64>(n, ComputeEigenvectors::No, par, Default::default());
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        None,
        par,
        MemStack::new(&mut MemBuffer::new(req)),
        Default::default(),
    )
    .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(s.column_vector().iter().copied().collect())
}

/// Ascending eigenvalues of a complex Hermitian matrix.
pub fn herm_eigenvalues(a: MatRef<'_, c64>) -> Result<Vec<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: a.ncols() });
    }
    let mut s = Diag::<c64>::zeros(n);
    let par = Par::Seq;
    let req = evd::self_adjoint_evd_scratch::<c64>(n, ComputeEigenvectors::No, par, Default::default());
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        None,
        par,
        MemStack::new(&mut MemBuffer::new(req)),
        Default::default(),
    )
    .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(s.column_vector().iter().map(|z| z.re).collect())
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: MatRef<'_, f64>) -> Result<Vec<f64>> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut s = Diag::<f64>::zeros(m.min(n));
    let par = Par::Seq;
    let req = svd::svd_scratch::<f64>(
        m,
        n,
        ComputeSvdVectors::No,
        ComputeSvdVectors::No,
        par,
        Default::default(),
    );
    svd::svd(
        a,
        s.as_mut(),
        None,
        None,
        par,
        MemStack::new(&mut MemBuffer::new(req)),
        Default::default(),
    )
    .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(s.column_vector().iter().copied().collect())
}

/// Number of singular values above `rel` times the largest.
pub fn numerical_rank(sv: &[f64], rel: f64) -> usize {
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&v| v > rel * max).count()
}

pub fn complex_determinant(a: MatRef<'_, c64>) -> c64 {
    a.determinant()
}

pub fn real_determinant(a: MatRef<'_, f64>) -> f64 {
    a.determinant()
}

/// Inverse of a Hermitian positive definite matrix through its Cholesky factor.
pub fn hpd_inverse(a: MatRef<'_, c64>) -> Result<Mat<c64>> {
    let n = a.nrows();
    let llt = a
        .llt(Side::Lower)
        .map_err(|e| Error::Singular(format!("Cholesky failed: {e:?}")))?;
    Ok(llt.solve(Mat::<c64>::identity(n, n)))
}

/// Inverse of a real square matrix via partial-pivot LU.
pub fn real_inverse(a: MatRef<'_, f64>) -> Mat<f64> {
    let n = a.nrows();
    a.partial_piv_lu().solve(Mat::<f64>::identity(n, n))
}

/// Max-abs entry of `a - b`.
pub fn max_abs_diff(a: MatRef<'_, f64>, b: MatRef<'_, f64>) -> f64 {
    let mut m = 0.0_f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - b[(i, j)]).abs());
        }
    }
    m
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_small_symmetric() {
        let a = faer::mat![[2.0, 1.0], [1.0, 2.0]];
        let ev = sym_eigenvalues(a.as_ref()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rank_of_rank_one() {
        let a = Mat::<f64>::from_fn(4, 4, |i, j| ((i + 1) * (j + 1)) as f64);
        let sv = singular_values(a.as_ref()).unwrap();
        assert_eq!(numerical_rank(&sv, 1e-10), 1);
    }

    #[test]
    fn hermitian_inverse_roundtrip() {
        let a = Mat::<c64>::from_fn(3, 3, |i, j| {
            if i == j {
                c64::new(4.0, 0.0)
            } else if i < j {
                c64::new(0.5, 0.25)
            } else {
                c64::new(0.5, -0.25)
            }
        });
        let inv = hpd_inverse(a.as_ref()).unwrap();
        let prod = &a * &inv;
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - c64::new(e, 0.0)).norm() < 1e-14);
            }
        }
    }
}
