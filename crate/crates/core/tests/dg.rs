mod common;

use glt_core::dg::*;
use glt_core::linalg::sym_eigenvalues;
use glt_core::rational::{rat, RatMatrix};
use glt_core::sparse::read_matrix_market;
use glt_core::structured::{circulant_dense, toeplitz_dense, DENSE_GUARD};
use glt_core::symbol::builtin_dg_symbol;

fn scaled(k: i64, rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_fn(rows.len(), rows.len(), |i, j| rat(rows[i][j], k))
}

#[test]
fn quadratic_and_linear_mass() {
    let b = build_basis(2).unwrap();
    assert_eq!(b.nodes, vec![rat(0, 1), rat(1, 2), rat(1, 1)]);
    assert_eq!(b.mass, scaled(30, &[&[4, 2, -1], &[2, 16, 2], &[-1, 2, 4]]));
    assert_eq!(build_basis(1).unwrap().mass, scaled(6, &[&[2, 1], &[1, 2]]));
}

#[test]
fn mass_integrates_to_cell_length() {
    for p in 1..=5 {
        let m = build_basis(p).unwrap().mass;
        let total = m.row_sums().into_iter().fold(rat(0, 1), |a, b| a + b);
        assert_eq!(total, rat(1, 1), "p={p}");
    }
}

#[test]
fn h_operators_annihilate_constants_and_are_symmetric() {
    for p in 1..=4 {
        let h = build_h_operators(&build_basis(p).unwrap()).unwrap();
        assert_eq!(h.center, h.center.transpose());
        assert_eq!(h.right, h.left.transpose());
        let sum = &(&h.left + &h.center) + &h.right;
        assert!(sum.row_sums().iter().all(|v| *v == rat(0, 1)), "p={p}");
    }
}

#[test]
fn interior_stencil_is_the_published_symbol() {
    let op = PressureOperator::dg(2, 6, 6, BoundaryCondition::Dirichlet).unwrap();
    let published = builtin_dg_symbol(2).unwrap();
    for j in [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]] {
        assert_eq!(op.interior_symbol().exact_block(j), published.exact_block(j), "{j:?}");
    }
}

#[test]
fn periodic_assembly_is_the_circulant() {
    let sym = builtin_dg_symbol(2).unwrap();
    for (n1, n2) in [(4, 4), (8, 8), (5, 7)] {
        let op = PressureOperator::dg(2, n1, n2, BoundaryCondition::Periodic).unwrap();
        let k = op.to_dense(DENSE_GUARD).unwrap();
        let c = circulant_dense(&sym, op.lattice(), DENSE_GUARD).unwrap();
        assert!(glt_core::linalg::max_abs_diff(k.as_ref(), c.as_ref()) <= 1e-13);
    }
}

#[test]
fn dirichlet_operator_is_spd_and_periodic_has_constant_kernel() {
    let d = PressureOperator::dg(2, 5, 5, BoundaryCondition::Dirichlet).unwrap();
    let k = d.to_dense(DENSE_GUARD).unwrap();
    assert_eq!(d.to_csr().asymmetry(), 0.0);
    assert!(sym_eigenvalues(k.as_ref()).unwrap()[0] > 0.0);

    let p = PressureOperator::dg(2, 5, 5, BoundaryCondition::Periodic).unwrap();
    let ev = sym_eigenvalues(p.to_dense(DENSE_GUARD).unwrap().as_ref()).unwrap();
    assert!(ev[0].abs() < 1e-10 && ev[1] > 1e-6);
    let y = p.matvec(&vec![1.0; p.lattice().order()]).unwrap();
    assert!(y.iter().all(|v| v.abs() < 1e-10));
}

#[test]
fn matrix_free_and_assembled_agree() {
    let op = PressureOperator::dg(2, 6, 5, BoundaryCondition::Dirichlet).unwrap();
    let x: Vec<f64> = (0..op.lattice().order()).map(|i| ((i * 7 % 13) as f64).sin()).collect();
    let y = op.matvec(&x).unwrap();
    let mut z = vec![0.0; x.len()];
    op.to_csr().matvec(&x, &mut z);
    assert!(common::max_diff(&y, &z) < 1e-13);
}

#[test]
fn boundary_part_structure() {
    let op = PressureOperator::dg(2, 10, 10, BoundaryCondition::Dirichlet).unwrap();
    let part = extract_boundary_part(&op).unwrap();
    let r = &part.report;
    assert!(r.block_diagonal && r.inner_block_diagonal);
    assert!(r.center_interior_zero, "e^(c)_i = 0 for interior i");
    assert!(r.left_interior_constant && r.right_interior_constant);
    assert!(r.center_groups_identical);
    assert!(r.center_flip_holds);
    assert_eq!(r.flip_pairing, FlipPairing::Crossed);
    assert!(r.psd && r.min_eigenvalue >= -1e-12);
    assert_eq!(r.rank, 324);
    assert_eq!(r.kinds.first(), Some(&BlockKind::Left));
    assert_eq!(r.kinds.last(), Some(&BlockKind::Right));
    assert_eq!(r.kinds.iter().filter(|k| **k == BlockKind::Center).count(), 8);
}

#[test]
fn boundary_part_is_difference_to_toeplitz() {
    let op = PressureOperator::dg(2, 6, 6, BoundaryCondition::Dirichlet).unwrap();
    let e = extract_boundary_part(&op).unwrap().e.to_dense(DENSE_GUARD).unwrap();
    let k = op.to_dense(DENSE_GUARD).unwrap();
    let t = toeplitz_dense(&builtin_dg_symbol(2).unwrap(), op.lattice(), DENSE_GUARD).unwrap();
    let mut worst = 0.0_f64;
    for i in 0..k.nrows() {
        for j in 0..k.ncols() {
            worst = worst.max((k[(i, j)] - t[(i, j)] - e[(i, j)]).abs());
        }
    }
    assert!(worst < 1e-14);
    let ev = sym_eigenvalues(e.as_ref()).unwrap();
    assert!(ev[0] >= -1e-12 * ev.last().unwrap().abs());
}

#[test]
fn boundary_rank_grows_linearly() {
    for n in [11, 17, 23] {
        let op = PressureOperator::dg(2, n, n, BoundaryCondition::Dirichlet).unwrap();
        assert_eq!(extract_boundary_part(&op).unwrap().report.rank, 36 * n - 36);
    }
}

#[test]
fn interlacing_at_eight() {
    let op = PressureOperator::dg(2, 8, 8, BoundaryCondition::Dirichlet).unwrap();
    let gamma = extract_boundary_part(&op).unwrap().report.rank;
    assert_eq!(gamma, 252);
    let t = sym_eigenvalues(op.toeplitz_part().to_dense(DENSE_GUARD).unwrap().as_ref()).unwrap();
    let k = sym_eigenvalues(op.to_dense(DENSE_GUARD).unwrap().as_ref()).unwrap();
    for j in 0..k.len() {
        assert!(t[j] <= k[j] + 1e-10);
        if j + gamma < k.len() {
            assert!(k[j] <= t[j + gamma] + 1e-10);
        }
    }
}

#[test]
fn other_degrees_assemble() {
    for p in [1, 3] {
        let op = PressureOperator::dg(p, 5, 5, BoundaryCondition::Dirichlet).unwrap();
        assert_eq!(op.lattice().s, (p + 1) * (p + 1));
        let ev = sym_eigenvalues(op.to_dense(DENSE_GUARD).unwrap().as_ref()).unwrap();
        assert!(ev[0] > 0.0);
    }
}

#[test]
fn small_grids_are_rejected() {
    assert!(PressureOperator::dg(2, 3, 8, BoundaryCondition::Dirichlet).is_err());
}

#[test]
fn operator_matrix_market_round_trip() {
    let csr = PressureOperator::dg(2, 4, 4, BoundaryCondition::Dirichlet).unwrap().to_csr();
    let mut buf = Vec::new();
    csr.write_matrix_market(&mut buf).unwrap();
    let back = read_matrix_market(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!(back.sub(&csr).unwrap().max_abs(), 0.0);
}
