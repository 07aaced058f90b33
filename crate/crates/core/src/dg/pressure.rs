use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::RatMatrix;
use crate::sparse::CsrMatrix;
use crate::structured::{BlockLattice, BlockToeplitz};
use crate::symbol::{builtin_dg_symbol, MatrixSymbol};

use super::basis::{build_basis, build_h_operators, Basis1D, HOperators};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Dirichlet,
    Periodic,
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirichlet" => Ok(Self::Dirichlet),
            "periodic" => Ok(Self::Periodic),
            _ => Err(Error::InvalidArgument(format!("unknown boundary condition {s:?}"))),
        }
    }
}

/// Position of a cell along one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side1 {
    First,
    Inner,
    Last,
}

/// Matrix-free staggered DG pressure operator `K_N` with unit scaling.
#[derive(Clone, Debug)]
pub struct PressureOperator {
    lattice: BlockLattice,
    bc: BoundaryCondition,
    p: usize,
    h: HOperators,
    interior: MatrixSymbol,
    /// `centers[c1][c2]` for cell classes first/inner/last on each level.
    centers: [[Vec<f64>; 3]; 3],
    centers_exact: Vec<Vec<RatMatrix>>,
}

fn class_of(i: usize, n: usize, bc: BoundaryCondition) -> Side1 {
    match bc {
        BoundaryCondition::Periodic => Side1::Inner,
        BoundaryCondition::Dirichlet if i == 0 => Side1::First,
        BoundaryCondition::Dirichlet if i + 1 == n => Side1::Last,
        BoundaryCondition::Dirichlet => Side1::Inner,
    }
}

fn class_index(c: Side1) -> usize {
    match c {
        Side1::First => 0,
        Side1::Inner => 1,
        Side1::Last => 2,
    }
}

/// Tensorizes the 1D operators; the level-1 factor is the outer one.
pub fn assemble_pressure_operator(basis: &Basis1D, n1: usize, n2: usize, bc: BoundaryCondition) -> Result<PressureOperator> {
    if n1 < 4 || n2 < 4 {
        return Err(Error::InvalidArgument(format!("grid must be at least 4x4, got {n1}x{n2}")));
    }
    let h = build_h_operators(basis)?;
    let m = &basis.mass;
    let q = basis.p + 1;
    let lattice = BlockLattice::new(n1, n2, q * q)?;
    let centers1 = [&h.center_left_boundary, &h.center, &h.center_right_boundary];
    let mut centers_exact = Vec::new();
    for c1 in centers1 {
        let mut row = Vec::new();
        for c2 in centers1 {
            row.push(&c1.kron(m) + &m.kron(c2));
        }
        centers_exact.push(row);
    }
    let interior = MatrixSymbol::from_exact(
        q * q,
        vec![
            ([0, 0], centers_exact[1][1].clone()),
            ([-1, 0], h.right.kron(m)),
            ([1, 0], h.left.kron(m)),
            ([0, -1], m.kron(&h.right)),
            ([0, 1], m.kron(&h.left)),
        ],
    )?;
    if basis.p == 2 {
        validate_against_builtin(&interior)?;
    }
    let centers = std::array::from_fn(|a| std::array::from_fn(|b| centers_exact[a][b].to_f64_vec()));
    Ok(PressureOperator { lattice, bc, p: basis.p, h, interior, centers, centers_exact })
}

fn validate_against_builtin(interior: &MatrixSymbol) -> Result<()> {
    let reference = builtin_dg_symbol(2)?;
    let mut worst = 0.0_f64;
    for j in reference.support() {
        let want = reference.block(j).expect("support index");
        let got = interior
            .block(j)
            .ok_or_else(|| Error::AssemblyValidation(format!("interior stencil lacks offset {j:?}")))?;
        for (a, b) in want.iter().zip(got) {
            worst = worst.max((a - b).abs());
        }
    }
    if interior.support().count() != reference.support().count() || worst > 1e-13 {
        return Err(Error::AssemblyValidation(format!(
            "interior stencil deviates from the published coefficients by {worst:e}"
        )));
    }
    Ok(())
}

impl PressureOperator {
    /// Builds the basis and assembles in one step.
    pub fn dg(p: usize, n1: usize, n2: usize, bc: BoundaryCondition) -> Result<Self> {
        assemble_pressure_operator(&build_basis(p)?, n1, n2, bc)
    }

    pub fn lattice(&self) -> BlockLattice {
        self.lattice
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn h_operators(&self) -> &HOperators {
        &self.h
    }

    /// The interior stencil as a symbol.
    pub fn interior_symbol(&self) -> &MatrixSymbol {
        &self.interior
    }

    pub fn toeplitz_part(&self) -> BlockToeplitz {
        BlockToeplitz::new(self.interior.clone(), self.lattice).expect("matching block size")
    }

    /// Exact centre block of cell `(i1, i2)`.
    pub fn center_block(&self, i1: usize, i2: usize) -> &RatMatrix {
        let c1 = class_index(class_of(i1, self.lattice.n1, self.bc));
        let c2 = class_index(class_of(i2, self.lattice.n2, self.bc));
        &self.centers_exact[c1][c2]
    }

    fn for_each_block(&self, mut f: impl FnMut(usize, usize, &[f64])) {
        let BlockLattice { n1, n2, .. } = self.lattice;
        let periodic = self.bc == BoundaryCondition::Periodic;
        let nb = |j: [i32; 2]| self.interior.block(j).expect("stencil offset");
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                let row = self.lattice.block_start(i1, i2);
                let c1 = class_index(class_of(i1, n1, self.bc));
                let c2 = class_index(class_of(i2, n2, self.bc));
                f(row, row, &self.centers[c1][c2]);
                for (d, off) in [(1i64, [-1, 0]), (-1, [1, 0])] {
                    let j1 = i1 as i64 + d;
                    let j1 = if periodic { j1.rem_euclid(n1 as i64) } else if (0..n1 as i64).contains(&j1) { j1 } else { continue };
                    f(row, self.lattice.block_start(j1 as usize, i2), nb(off));
                }
                for (d, off) in [(1i64, [0, -1]), (-1, [0, 1])] {
                    let j2 = i2 as i64 + d;
                    let j2 = if periodic { j2.rem_euclid(n2 as i64) } else if (0..n2 as i64).contains(&j2) { j2 } else { continue };
                    f(row, self.lattice.block_start(i1, j2 as usize), nb(off));
                }
            }
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.lattice.check_len(x.len())?;
        let mut y = vec![0.0; x.len()];
        self.apply_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let s = self.lattice.s;
        y.iter_mut().for_each(|v| *v = 0.0);
        self.for_each_block(|r, c, b| {
            for a in 0..s {
                let mut acc = 0.0;
                for (bv, xv) in b[a * s..(a + 1) * s].iter().zip(&x[c..c + s]) {
                    acc += bv * xv;
                }
                y[r + a] += acc;
            }
        });
    }

    pub fn to_csr(&self) -> CsrMatrix {
        let s = self.lattice.s;
        let mut t = Vec::new();
        self.for_each_block(|r, c, b| {
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
        self.to_csr().to_dense(guard)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_matches_published_blocks_exactly() {
        let op = PressureOperator::dg(2, 4, 4, BoundaryCondition::Dirichlet).unwrap();
        let reference = builtin_dg_symbol(2).unwrap();
        for j in reference.support() {
            assert_eq!(op.interior_symbol().exact_block(j), reference.exact_block(j), "offset {j:?}");
        }
    }

    #[test]
    fn small_grids_are_rejected() {
        assert!(PressureOperator::dg(2, 3, 8, BoundaryCondition::Dirichlet).is_err());
    }

    #[test]
    fn dirichlet_operator_is_symmetric() {
        let op = PressureOperator::dg(2, 5, 6, BoundaryCondition::Dirichlet).unwrap();
        assert_eq!(op.to_csr().asymmetry(), 0.0);
    }
}
