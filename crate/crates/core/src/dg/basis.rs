//! One-dimensional nodal basis and staggered coupling matrices.
//!
//! Reference layout: main cell `[0, 1]`, right neighbour `[1, 2]`, dual cells
//! `[1/2, 3/2]` (right face) and `[-1/2, 1/2]` (left face). At a domain
//! boundary the dual cell is cut to the half inside the domain.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, rat_int, RatMatrix, Rational};

use super::poly::Poly;

#[derive(Clone, Debug)]
pub struct Basis1D {
    pub p: usize,
    pub nodes: Vec<Rational>,
    pub mass: RatMatrix,
    /// Dual cell on the right face against the right neighbour's pressure.
    pub r_tilde: RatMatrix,
    /// Dual cell on the right face against this cell's pressure.
    pub l_tilde: RatMatrix,
    /// Divergence of the right-face velocity tested in this cell.
    pub l_bar: RatMatrix,
    /// Divergence of the left-face velocity tested in this cell.
    pub r_bar: RatMatrix,
    pub boundary: BoundaryCouplings,
}

/// Couplings of the half dual cells at the two domain ends.
#[derive(Clone, Debug)]
pub struct BoundaryCouplings {
    pub mass: RatMatrix,
    pub r_tilde_left: RatMatrix,
    pub r_bar_left: RatMatrix,
    pub l_tilde_right: RatMatrix,
    pub l_bar_right: RatMatrix,
}

fn basis_on(nodes: &[Rational], a: &Rational, b: &Rational) -> Vec<Poly> {
    let pts: Vec<Rational> = nodes.iter().map(|t| a + (b - a) * t).collect();
    (0..pts.len()).map(|i| Poly::lagrange(&pts, i)).collect()
}

fn gram(f: &[Poly], g: &[Poly], a: &Rational, b: &Rational) -> RatMatrix {
    RatMatrix::from_fn(f.len(), g.len(), |i, j| f[i].mul(&g[j]).integrate(a, b))
}

fn point(f: &[Poly], g: &[Poly], x: &Rational) -> RatMatrix {
    RatMatrix::from_fn(f.len(), g.len(), |i, j| f[i].eval(x) * g[j].eval(x))
}

fn derivs(f: &[Poly]) -> Vec<Poly> {
    f.iter().map(Poly::derivative).collect()
}

pub fn build_basis(p: usize) -> Result<Basis1D> {
    if p == 0 {
        return Err(Error::InvalidArgument("polynomial degree must be at least 1".into()));
    }
    let nodes: Vec<Rational> = (0..=p).map(|i| rat(i as i64, p as i64)).collect();
    let (z, h, one, th, two) = (rat_int(0), rat(1, 2), rat_int(1), rat(3, 2), rat_int(2));
    let phi = basis_on(&nodes, &z, &one);
    let phi_next = basis_on(&nodes, &one, &two);
    let psi = basis_on(&nodes, &h, &th);
    let psi_prev = basis_on(&nodes, &(-&h), &h);
    let (dphi, dphi_next, dpsi, dpsi_prev) = (derivs(&phi), derivs(&phi_next), derivs(&psi), derivs(&psi_prev));

    let mass = gram(&phi, &phi, &z, &one);
    let r_tilde = &gram(&psi, &dphi_next, &one, &th) + &point(&psi, &phi_next, &one);
    let l_tilde = &point(&psi, &phi, &one) - &gram(&psi, &dphi, &h, &one);
    let l_bar = &gram(&phi, &dpsi, &h, &one) + &point(&phi, &psi, &h);
    let r_bar = &point(&phi, &psi_prev, &h) - &gram(&phi, &dpsi_prev, &z, &h);

    let psi_l = basis_on(&nodes, &z, &h);
    let psi_r = basis_on(&nodes, &h, &one);
    let (dpsi_l, dpsi_r) = (derivs(&psi_l), derivs(&psi_r));
    let boundary = BoundaryCouplings {
        mass: gram(&psi_l, &psi_l, &z, &h),
        r_tilde_left: &gram(&psi_l, &dphi, &z, &h) + &point(&psi_l, &phi, &z),
        r_bar_left: &point(&phi, &psi_l, &h) - &gram(&phi, &dpsi_l, &z, &h),
        l_tilde_right: &point(&psi_r, &phi, &one) - &gram(&psi_r, &dphi, &h, &one),
        l_bar_right: &gram(&phi, &dpsi_r, &h, &one) + &point(&phi, &psi_r, &h),
    };
    Ok(Basis1D { p, nodes, mass, r_tilde, l_tilde, l_bar, r_bar, boundary })
}

/// Three-term 1D pressure stencil with unit scaling, plus the centre blocks
/// of the two boundary cells.
#[derive(Clone, Debug)]
pub struct HOperators {
    pub right: RatMatrix,
    pub left: RatMatrix,
    pub center: RatMatrix,
    pub center_left_boundary: RatMatrix,
    pub center_right_boundary: RatMatrix,
}

pub fn build_h_operators(basis: &Basis1D) -> Result<HOperators> {
    let mi = basis.mass.inverse()?;
    let mbi = basis.boundary.mass.inverse()?;
    let b = &basis.boundary;
    let right = -&(&(&basis.l_bar * &mi) * &basis.r_tilde);
    let left = -&(&(&basis.r_bar * &mi) * &basis.l_tilde);
    let from_right_face = &(&basis.l_bar * &mi) * &basis.l_tilde;
    let from_left_face = &(&basis.r_bar * &mi) * &basis.r_tilde;
    let center = &from_right_face + &from_left_face;
    let center_left_boundary = &from_right_face + &(&(&b.r_bar_left * &mbi) * &b.r_tilde_left);
    let center_right_boundary = &(&(&b.l_bar_right * &mbi) * &b.l_tilde_right) + &from_left_face;
    Ok(HOperators { right, left, center, center_left_boundary, center_right_boundary })
}

/// Rational strings of the basis matrices, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub p: usize,
    pub nodes: Vec<String>,
    pub mass: Vec<Vec<String>>,
    pub h_right: Vec<Vec<String>>,
    pub h_left: Vec<Vec<String>>,
    pub h_center: Vec<Vec<String>>,
}

impl BasisReport {
    pub fn new(basis: &Basis1D, h: &HOperators) -> Self {
        Self {
            p: basis.p,
            nodes: basis.nodes.iter().map(format_rational).collect(),
            mass: basis.mass.to_strings(),
            h_right: h.right.to_strings(),
            h_left: h.left.to_strings(),
            h_center: h.center.to_strings(),
        }
    }
}

/// Reversal permutation matrix of order `n`.
pub fn flip(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |i, j| if i + j + 1 == n { rat_int(1) } else { rat_int(0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_mass() {
        let b = build_basis(1).unwrap();
        let want = RatMatrix::parse_rows(&[&["2", "1"], &["1", "2"]]).unwrap().scale(&rat(1, 6));
        assert_eq!(b.mass, want);
    }

    #[test]
    fn quadratic_mass() {
        let b = build_basis(2).unwrap();
        let want = RatMatrix::parse_rows(&[&["4", "2", "-1"], &["2", "16", "2"], &["-1", "2", "4"]])
            .unwrap()
            .scale(&rat(1, 30));
        assert_eq!(b.mass, want);
    }

    #[test]
    fn galerkin_pairing_and_null_vector() {
        for p in 1..=4 {
            let b = build_basis(p).unwrap();
            assert_eq!(b.l_bar, b.l_tilde.transpose(), "p={p}");
            assert_eq!(b.r_bar, b.r_tilde.transpose(), "p={p}");
            assert_eq!(b.boundary.r_bar_left, b.boundary.r_tilde_left.transpose());
            assert_eq!(b.boundary.l_bar_right, b.boundary.l_tilde_right.transpose());
            let h = build_h_operators(&b).unwrap();
            assert!(h.center.is_symmetric());
            assert_eq!(h.left, h.right.transpose());
            let total = &(&h.left + &h.center) + &h.right;
            assert!(total.row_sums().iter().all(|v| v == &rat_int(0)), "p={p}");
            let j = flip(p + 1);
            assert_eq!(&(&j * &h.center_left_boundary) * &j, h.center_right_boundary);
        }
    }

    #[test]
    fn mass_rows_integrate_to_one() {
        let b = build_basis(3).unwrap();
        let total = b.mass.row_sums().into_iter().fold(rat_int(0), |a, v| a + v);
        assert_eq!(total, rat_int(1));
    }
}
