//! Matrix-valued trigonometric polynomial symbols on two levels.

mod builtin;
mod json;
mod sample;
mod taylor;

use std::collections::BTreeMap;

use faer::Mat;
use sha2::{Digest, Sha256};

use crate::c64;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::RatMatrix;

pub use builtin::builtin_dg_symbol;
pub use json::{SymbolJson, CoeffJson};
pub use sample::{least_squares_slope, min_eig_zero_order, sample_eigs, EigenSample, GridKind};
pub use taylor::{det_taylor_at_origin, det_taylor_finite_difference, DetTaylor, ExactDetTaylor};

pub type Index2 = [i32; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    /// Row-major `s x s` values.
    pub values: Vec<f64>,
    pub exact: Option<RatMatrix>,
}

/// Finitely supported map `j -> f_j` of real `s x s` blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSymbol {
    s: usize,
    coeffs: BTreeMap<Index2, Block>,
}

fn neg(j: Index2) -> Index2 {
    [-j[0], -j[1]]
}

impl MatrixSymbol {
    /// Builds a symbol from exact blocks; every `-j` partner must be present
    /// and equal to the transpose.
    pub fn from_exact(s: usize, coeffs: Vec<(Index2, RatMatrix)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, m) in coeffs {
            if m.rows() != s || m.cols() != s {
                return Err(Error::DimensionMismatch { expected: s, actual: m.rows() });
            }
            let values = m.to_f64_vec();
            if map.insert(j, Block { values, exact: Some(m) }).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate coefficient index {j:?}")));
            }
        }
        let sym = Self { s, coeffs: map };
        sym.check_hermitian()?;
        Ok(sym)
    }

    pub fn from_f64(s: usize, coeffs: Vec<(Index2, Vec<f64>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, v) in coeffs {
            if v.len() != s * s {
                return Err(Error::DimensionMismatch { expected: s * s, actual: v.len() });
            }
            if map.insert(j, Block { values: v, exact: None }).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate coefficient index {j:?}")));
            }
        }
        let sym = Self { s, coeffs: map };
        sym.check_hermitian()?;
        Ok(sym)
    }

    /// Fills in `f_{-j} = f_j^T` for every given `j != 0`; the `(0,0)` block
    /// is symmetrized.
    pub fn hermitian_completion(s: usize, half: Vec<(Index2, Vec<f64>)>) -> Result<Self> {
        let mut map: BTreeMap<Index2, Vec<f64>> = BTreeMap::new();
        for (j, v) in half {
            if v.len() != s * s {
                return Err(Error::DimensionMismatch { expected: s * s, actual: v.len() });
            }
            if j == [0, 0] {
                let sym: Vec<f64> =
                    (0..s * s).map(|k| 0.5 * (v[k] + v[(k % s) * s + k / s])).collect();
                *map.entry(j).or_insert_with(|| vec![0.0; s * s]) = sym;
                continue;
            }
            let t: Vec<f64> = (0..s * s).map(|k| v[(k % s) * s + k / s]).collect();
            map.insert(j, v);
            map.insert(neg(j), t);
        }
        Self::from_f64(s, map.into_iter().collect())
    }

    /// Scalar (`s = 1`) symbol from `(j, f_j)` pairs.
    pub fn scalar(coeffs: &[(Index2, f64)]) -> Result<Self> {
        Self::from_f64(1, coeffs.iter().map(|&(j, c)| (j, vec![c])).collect())
    }

    pub fn constant(s: usize, block: Vec<f64>) -> Result<Self> {
        Self::from_f64(s, vec![([0, 0], block)])
    }

    pub fn identity(s: usize) -> Self {
        let ex = RatMatrix::identity(s);
        Self::from_exact(s, vec![([0, 0], ex)]).expect("identity is Hermitian")
    }

    /// `2 - cos t1 - cos t2`.
    pub fn scalar_laplacian() -> Self {
        let c = |a: i64, b: i64| RatMatrix::from_fn(1, 1, |_, _| crate::rational::rat(a, b));
        Self::from_exact(
            1,
            vec![
                ([0, 0], c(2, 1)),
                ([1, 0], c(-1, 2)),
                ([-1, 0], c(-1, 2)),
                ([0, 1], c(-1, 2)),
                ([0, -1], c(-1, 2)),
            ],
        )
        .expect("laplacian is Hermitian")
    }

    /// Coefficientwise square of a scalar symbol, i.e. the product `f * f`.
    pub fn scalar_square(&self) -> Result<Self> {
        if self.s != 1 {
            return Err(Error::InvalidArgument("scalar_square needs s = 1".into()));
        }
        let mut acc: BTreeMap<Index2, f64> = BTreeMap::new();
        for (a, ba) in &self.coeffs {
            for (b, bb) in &self.coeffs {
                *acc.entry([a[0] + b[0], a[1] + b[1]]).or_insert(0.0) += ba.values[0] * bb.values[0];
            }
        }
        Self::scalar(&acc.into_iter().filter(|(_, v)| *v != 0.0).collect::<Vec<_>>())
    }

    fn check_hermitian(&self) -> Result<()> {
        let s = self.s;
        for (j, b) in &self.coeffs {
            let partner = self.coeffs.get(&neg(*j)).ok_or_else(|| {
                Error::NotHermitian(format!("coefficient {j:?} has no partner at {:?}", neg(*j)))
            })?;
            if let (Some(a), Some(p)) = (&b.exact, &partner.exact) {
                if a.transpose() != *p {
                    return Err(Error::NotHermitian(format!("f_{:?} != f_{j:?}^T", neg(*j))));
                }
                continue;
            }
            let scale = b.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
            for r in 0..s {
                for c in 0..s {
                    if (b.values[r * s + c] - partner.values[c * s + r]).abs() > 1e-14 * scale {
                        return Err(Error::NotHermitian(format!(
                            "f_{:?} != f_{j:?}^T at ({r},{c})",
                            neg(*j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn support(&self) -> impl Iterator<Item = Index2> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (Index2, &Block)> + '_ {
        self.coeffs.iter().map(|(j, b)| (*j, b))
    }

    pub fn block(&self, j: Index2) -> Option<&[f64]> {
        self.coeffs.get(&j).map(|b| b.values.as_slice())
    }

    pub fn exact_block(&self, j: Index2) -> Option<&RatMatrix> {
        self.coeffs.get(&j).and_then(|b| b.exact.as_ref())
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.values().all(|b| b.exact.is_some())
    }

    /// Componentwise max `|j|` over the support.
    pub fn degree(&self) -> [usize; 2] {
        let mut d = [0usize; 2];
        for j in self.coeffs.keys() {
            d[0] = d[0].max(j[0].unsigned_abs() as usize);
            d[1] = d[1].max(j[1].unsigned_abs() as usize);
        }
        d
    }

    /// `sum_j f_j exp(i <j, theta>)`.
    pub fn eval(&self, theta: [f64; 2]) -> Mat<c64> {
        let mut out = Mat::<c64>::zeros(self.s, self.s);
        self.eval_into(theta, &mut out);
        out
    }

    pub fn eval_into(&self, theta: [f64; 2], out: &mut Mat<c64>) {
        let s = self.s;
        out.fill(c64::new(0.0, 0.0));
        for (j, b) in &self.coeffs {
            let phase = j[0] as f64 * theta[0] + j[1] as f64 * theta[1];
            let w = c64::new(phase.cos(), phase.sin());
            for r in 0..s {
                for c in 0..s {
                    let v = b.values[r * s + c];
                    if v != 0.0 {
                        out[(r, c)] += w * v;
                    }
                }
            }
        }
        for r in 0..s {
            out[(r, r)] = c64::new(out[(r, r)].re, 0.0);
            for c in r + 1..s {
                let avg = (out[(r, c)] + out[(c, r)].conj()) * 0.5;
                out[(r, c)] = avg;
                out[(c, r)] = avg.conj();
            }
        }
    }

    /// Ascending eigenvalues of `f(theta)`.
    pub fn eigenvalues_at(&self, theta: [f64; 2]) -> Result<Vec<f64>> {
        linalg::herm_eigenvalues(self.eval(theta).as_ref())
    }

    /// Exact value of `f(0,0)` when all blocks are exact.
    pub fn exact_at_origin(&self) -> Option<RatMatrix> {
        let mut acc = RatMatrix::zeros(self.s, self.s);
        for b in self.coeffs.values() {
            acc = &acc + b.exact.as_ref()?;
        }
        Some(acc)
    }

    /// Coefficients folded modulo `n` per level: `j -> (j1 mod n1, j2 mod n2)`.
    pub fn folded(&self, n: [usize; 2]) -> BTreeMap<[usize; 2], Vec<f64>> {
        let s = self.s;
        let mut out: BTreeMap<[usize; 2], Vec<f64>> = BTreeMap::new();
        for (j, b) in &self.coeffs {
            let k = [
                j[0].rem_euclid(n[0] as i32) as usize,
                j[1].rem_euclid(n[1] as i32) as usize,
            ];
            let e = out.entry(k).or_insert_with(|| vec![0.0; s * s]);
            for (d, v) in e.iter_mut().zip(&b.values) {
                *d += v;
            }
        }
        out
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn content_hash(&self) -> String {
        let text = serde_json::to_string(&self.to_json()).expect("symbol serializes");
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_partner_is_rejected() {
        let r = MatrixSymbol::scalar(&[([0, 0], 1.0), ([1, 0], 0.5)]);
        assert!(matches!(r, Err(Error::NotHermitian(_))));
    }

    #[test]
    fn constant_symbol_is_constant() {
        let sym = MatrixSymbol::identity(3);
        let f = sym.eval([0.3, -1.7]);
        for r in 0..3 {
            for c in 0..3 {
                let e = if r == c { 1.0 } else { 0.0 };
                assert_eq!(f[(r, c)], c64::new(e, 0.0));
            }
        }
    }

    #[test]
    fn laplacian_square_has_degree_two() {
        let sq = MatrixSymbol::scalar_laplacian().scalar_square().unwrap();
        assert_eq!(sq.degree(), [2, 2]);
        let t = [0.4_f64, 1.1];
        let base = 2.0 - t[0].cos() - t[1].cos();
        assert!((sq.eval(t)[(0, 0)].re - base * base).abs() < 1e-13);
    }

    #[test]
    fn folding_aliases_opposite_offsets() {
        let sym = MatrixSymbol::scalar_laplacian();
        let f = sym.folded([2, 2]);
        assert_eq!(f[&[1, 0]], vec![-1.0]);
        assert_eq!(f[&[0, 0]], vec![2.0]);
    }
}
