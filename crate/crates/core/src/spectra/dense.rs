//! Full symmetric spectra, optionally split into the four sectors of two
//! commuting reflections.

use faer::Mat;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::sparse::CsrMatrix;
use crate::structured::BlockLattice;

/// Default limit on the matrix order for dense eigensolves.
pub const SPECTRUM_GUARD: usize = 20_000;

/// Ascending eigenvalues by one dense symmetric eigensolve.
pub fn dense_spectrum(a: &CsrMatrix, guard: usize) -> Result<Vec<f64>> {
    let d = a.to_dense(guard)?;
    linalg::sym_eigenvalues(d.as_ref())
}

/// Index involutions mirroring level 1 and level 2 of a tensor-product block
/// layout with `s = q^2`, local index `t = a1 * q + a2`.
pub fn tensor_reflections(lattice: BlockLattice) -> Option<[Vec<usize>; 2]> {
    let q = (lattice.s as f64).sqrt().round() as usize;
    if q * q != lattice.s {
        return None;
    }
    let BlockLattice { n1, n2, .. } = lattice;
    let mut r1 = vec![0; lattice.order()];
    let mut r2 = vec![0; lattice.order()];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            for a1 in 0..q {
                for a2 in 0..q {
                    let idx = lattice.index(i1, i2, a1 * q + a2);
                    r1[idx] = lattice.index(n1 - 1 - i1, i2, (q - 1 - a1) * q + a2);
                    r2[idx] = lattice.index(i1, n2 - 1 - i2, a1 * q + (q - 1 - a2));
                }
            }
        }
    }
    Some([r1, r2])
}

/// True when `a[r(i), r(j)] == a[i, j]` for every stored entry.
pub fn commutes(a: &CsrMatrix, r: &[usize]) -> bool {
    let scale = a.max_abs();
    a.triplets().all(|(i, j, v)| (a.get(r[i], r[j]) - v).abs() <= 1e-13 * scale)
}

/// Ascending eigenvalues using the reflection sectors when both reflections
/// commute with `a` and with each other; falls back to a single dense solve.
pub fn symmetric_spectrum(a: &CsrMatrix, refl: Option<&[Vec<usize>; 2]>, guard: usize) -> Result<Vec<f64>> {
    let n = a.nrows();
    if n > guard {
        return Err(Error::SizeGuard { order: n, limit: guard });
    }
    let usable = refl.filter(|r| {
        r[0].len() == n
            && r[1].len() == n
            && (0..n).all(|i| r[0][r[1][i]] == r[1][r[0][i]])
            && commutes(a, &r[0])
            && commutes(a, &r[1])
    });
    let Some([r1, r2]) = usable else {
        return dense_spectrum(a, guard);
    };
    let sectors = sector_bases(r1, r2);
    let mut all: Vec<f64> = sectors
        .par_iter()
        .map(|basis| {
            let b = sector_matrix(a, basis);
            linalg::sym_eigenvalues(b.as_ref())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if all.len() != n {
        return Err(Error::Eigensolver(format!("sector sizes sum to {} instead of {n}", all.len())));
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Per sector: for every original index, `(basis column, coefficient)` or `None`.
struct SectorBasis {
    dim: usize,
    coord: Vec<Option<(usize, f64)>>,
}

fn sector_bases(r1: &[usize], r2: &[usize]) -> Vec<SectorBasis> {
    let n = r1.len();
    let mut out = Vec::new();
    for (c1, c2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let mut coord = vec![None; n];
        let mut dim = 0;
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let images = [(i, 1.0), (r1[i], c1), (r2[i], c2), (r1[r2[i]], c1 * c2)];
            let mut acc: Vec<(usize, f64)> = Vec::with_capacity(4);
            for (k, w) in images {
                seen[k] = true;
                match acc.iter_mut().find(|e| e.0 == k) {
                    Some(e) => e.1 += w,
                    None => acc.push((k, w)),
                }
            }
            acc.retain(|e| e.1 != 0.0);
            if acc.is_empty() {
                continue;
            }
            let norm = acc.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt();
            for (k, w) in acc {
                coord[k] = Some((dim, w / norm));
            }
            dim += 1;
        }
        out.push(SectorBasis { dim, coord });
    }
    out
}

fn sector_matrix(a: &CsrMatrix, basis: &SectorBasis) -> Mat<f64> {
    let mut b = Mat::<f64>::zeros(basis.dim, basis.dim);
    for (i, j, v) in a.triplets() {
        if let (Some((p, ci)), Some((q, cj))) = (basis.coord[i], basis.coord[j]) {
            b[(p, q)] += ci * v * cj;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{BoundaryCondition, PressureOperator};

    #[test]
    fn sectors_reproduce_full_spectrum() {
        for (n1, n2) in [(4, 4), (5, 4), (5, 7)] {
            let op = PressureOperator::dg(2, n1, n2, BoundaryCondition::Dirichlet).unwrap();
            let a = op.to_csr();
            let refl = tensor_reflections(op.lattice()).unwrap();
            assert!(commutes(&a, &refl[0]) && commutes(&a, &refl[1]));
            let fast = symmetric_spectrum(&a, Some(&refl), SPECTRUM_GUARD).unwrap();
            let full = dense_spectrum(&a, SPECTRUM_GUARD).unwrap();
            for (x, y) in fast.iter().zip(&full) {
                assert!((x - y).abs() < 1e-11, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn non_commuting_reflection_falls_back() {
        let a = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (1, 1, 2.0)]).unwrap();
        let swap = [vec![1, 0], vec![0, 1]];
        assert!(!commutes(&a, &swap[0]));
        assert_eq!(symmetric_spectrum(&a, Some(&swap), 10).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn guard_is_enforced() {
        let a = CsrMatrix::from_triplets(3, 3, &[(0, 0, 1.0)]).unwrap();
        assert!(matches!(dense_spectrum(&a, 2), Err(Error::SizeGuard { .. })));
    }
}
