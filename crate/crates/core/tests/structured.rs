mod common;

use common::{dense_apply, max_diff};
use glt_core::linalg::sym_eigenvalues;
use glt_core::spectra::dense_spectrum;
use glt_core::structured::*;
use glt_core::symbol::{builtin_dg_symbol, sample_eigs, GridKind, MatrixSymbol};
use glt_core::c64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn builtin() -> MatrixSymbol {
    builtin_dg_symbol(2).unwrap()
}

fn random(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

#[test]
fn toeplitz_blocks_follow_the_offsets() {
    let sym = builtin();
    let lat = BlockLattice::square(2, 9).unwrap();
    let t = toeplitz_dense(&sym, lat, DENSE_GUARD).unwrap();
    assert_eq!(t.nrows(), 36);
    // block row (0,0), block column (0,1): offset i - j = (0,-1)
    let b = sym.block([0, -1]).unwrap();
    let (r0, c0) = (lat.block_start(0, 0), lat.block_start(0, 1));
    for a in 0..9 {
        for c in 0..9 {
            assert_eq!(t[(r0 + a, c0 + c)], b[a * 9 + c]);
        }
    }
    // diagonal neighbours (1,1) are outside the support
    let c1 = lat.block_start(1, 1);
    assert!((0..9).all(|a| (0..9).all(|c| t[(r0 + a, c1 + c)] == 0.0)));
    let asym = (0..36).flat_map(|i| (0..36).map(move |j| (i, j))).map(|(i, j)| (t[(i, j)] - t[(j, i)]).abs()).fold(0.0, f64::max);
    assert!(asym <= 1e-14);
}

#[test]
fn constant_symbol_gives_block_diagonal() {
    let a = vec![2.0, 1.0, 1.0, 3.0];
    let sym = MatrixSymbol::constant(2, a.clone()).unwrap();
    let lat = BlockLattice::new(3, 2, 2).unwrap();
    let t = toeplitz_dense(&sym, lat, DENSE_GUARD).unwrap();
    for i in 0..12 {
        for j in 0..12 {
            let want = if i / 2 == j / 2 { a[(i % 2) * 2 + j % 2] } else { 0.0 };
            assert_eq!(t[(i, j)], want);
        }
    }
    let circ = BlockCirculant::new(sym, lat).unwrap();
    for b in circ.spectral_blocks() {
        for k in 0..4 {
            assert!((b[(k / 2, k % 2)] - c64::new(a[k], 0.0)).norm() < 1e-15);
        }
    }
    let x = random(12, 4);
    let y = circ.matvec(&x).unwrap();
    for blk in 0..6 {
        for r in 0..2 {
            let want = a[r * 2] * x[blk * 2] + a[r * 2 + 1] * x[blk * 2 + 1];
            assert!((y[blk * 2 + r] - want).abs() < 1e-14);
        }
    }
}

#[test]
fn scalar_laplacian_toeplitz() {
    let lat = BlockLattice::square(3, 1).unwrap();
    let t = toeplitz_dense(&MatrixSymbol::scalar_laplacian(), lat, DENSE_GUARD).unwrap();
    for i in 0..9 {
        for j in 0..9 {
            let d = (i as i64 - j as i64).abs();
            let neighbour = (d == 1 && i / 3 == j / 3) || d == 3;
            let want = if i == j { 2.0 } else if neighbour { -0.5 } else { 0.0 };
            assert_eq!(t[(i, j)], want, "({i},{j})");
        }
    }
}

#[test]
fn scalar_laplacian_stencil() {
    let lat = BlockLattice::square(5, 1).unwrap();
    let toep = BlockToeplitz::new(MatrixSymbol::scalar_laplacian(), lat).unwrap();
    let x = random(25, 9);
    let y = toep.matvec(&x).unwrap();
    let at = |i: usize, j: usize| x[i * 5 + j];
    for i in 1..4 {
        for j in 1..4 {
            let want = 2.0 * at(i, j) - 0.5 * (at(i - 1, j) + at(i + 1, j) + at(i, j - 1) + at(i, j + 1));
            assert!((y[i * 5 + j] - want).abs() < 1e-15);
        }
    }
    assert!(toep.matvec(&[0.0; 25]).unwrap().iter().all(|v| *v == 0.0));
}

#[test]
fn circulant_row_block_sums() {
    let sym = builtin();
    let lat = BlockLattice::square(4, 9).unwrap();
    let c = circulant_dense(&sym, lat, DENSE_GUARD).unwrap();
    let f0 = sym.eval([0.0, 0.0]);
    for bi in 0..16 {
        for a in 0..9 {
            for b in 0..9 {
                let s: f64 = (0..16).map(|bj| c[(bi * 9 + a, bj * 9 + b)]).sum();
                assert!((s - f0[(a, b)].re).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn small_circulant_aliases_opposite_offsets() {
    let sym = builtin();
    let lat = BlockLattice::square(2, 9).unwrap();
    let c = circulant_dense(&sym, lat, DENSE_GUARD).unwrap();
    let (p, m) = (sym.block([1, 0]).unwrap(), sym.block([-1, 0]).unwrap());
    let (r0, c0) = (lat.block_start(1, 0), lat.block_start(0, 0));
    for a in 0..9 {
        for b in 0..9 {
            assert!((c[(r0 + a, c0 + b)] - p[a * 9 + b] - m[a * 9 + b]).abs() < 1e-15);
        }
    }
}

#[test]
fn scalar_circulant_spectrum() {
    let lat = BlockLattice::square(4, 1).unwrap();
    let c = circulant_dense(&MatrixSymbol::scalar_laplacian(), lat, DENSE_GUARD).unwrap();
    let got = sym_eigenvalues(c.as_ref()).unwrap();
    let mut want: Vec<f64> = (0..4)
        .flat_map(|j| (0..4).map(move |k| (j, k)))
        .map(|(j, k)| {
            let t = |m: i32| 2.0 * std::f64::consts::PI * m as f64 / 4.0;
            2.0 - t(j).cos() - t(k).cos()
        })
        .collect();
    want.sort_by(f64::total_cmp);
    assert!(max_diff(&got, &want) < 1e-13);
}

#[test]
fn spectral_blocks_give_the_dense_spectrum() {
    let sym = builtin();
    let lat = BlockLattice::square(8, 9).unwrap();
    let circ = BlockCirculant::new(sym.clone(), lat).unwrap();
    let mut blocks = Vec::new();
    for (r, b) in circ.spectral_blocks().iter().enumerate() {
        blocks.extend(glt_core::linalg::herm_eigenvalues(b.as_ref()).unwrap());
        let f = sym.eval(circ.theta(r));
        for i in 0..9 {
            for j in 0..9 {
                assert!((f[(i, j)] - b[(i, j)]).norm() < 1e-14);
            }
        }
    }
    blocks.sort_by(f64::total_cmp);
    let dense = sym_eigenvalues(circ.to_dense(DENSE_GUARD).unwrap().as_ref()).unwrap();
    assert!(max_diff(&blocks, &dense) < 1e-10);
}

#[test]
fn zero_frequency_block_is_singular() {
    let circ = BlockCirculant::new(builtin(), BlockLattice::square(4, 9).unwrap()).unwrap();
    let b0 = &circ.spectral_blocks()[0];
    for i in 0..9 {
        let s: c64 = (0..9).map(|j| b0[(i, j)]).sum();
        assert!(s.norm() < 1e-14);
    }
}

#[test]
fn circulant_annihilates_constants() {
    let lat = BlockLattice::square(6, 9).unwrap();
    let circ = BlockCirculant::new(builtin(), lat).unwrap();
    let y = circ.matvec(&vec![1.0; lat.order()]).unwrap();
    assert!(y.iter().all(|v| v.abs() <= 1e-12 * lat.order() as f64));
}

#[test]
fn complex_matvec_has_negligible_imaginary_part() {
    let lat = BlockLattice::new(5, 7, 9).unwrap();
    let circ = BlockCirculant::new(builtin(), lat).unwrap();
    let x = random(lat.order(), 2);
    let xc: Vec<c64> = x.iter().map(|&v| c64::new(v, 0.0)).collect();
    let y = circ.matvec_complex(&xc).unwrap();
    let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!(y.iter().all(|v| v.im.abs() <= 1e-12 * nrm));
}

#[test]
fn length_mismatch_is_rejected() {
    let lat = BlockLattice::square(4, 9).unwrap();
    let circ = BlockCirculant::new(builtin(), lat).unwrap();
    assert!(circ.matvec(&[1.0; 3]).is_err());
    assert!(BlockToeplitz::new(builtin(), lat).unwrap().matvec(&[1.0; 3]).is_err());
}

#[test]
fn dense_guard() {
    let lat = BlockLattice::square(80, 9).unwrap();
    assert!(matches!(toeplitz_dense(&builtin(), lat, DENSE_GUARD), Err(glt_core::Error::SizeGuard { .. })));
}

#[test]
fn toeplitz_spectrum_is_localized() {
    let sym = builtin();
    let iv = sample_eigs(&sym, 200, GridKind::Half).unwrap().intervals;
    let (lo, hi) = (iv[0].0, iv[8].1);
    for n in 4..=12 {
        let lat = BlockLattice::square(n, 9).unwrap();
        let t = BlockToeplitz::new(sym.clone(), lat).unwrap().to_csr();
        let ev = dense_spectrum(&t, 20_000).unwrap();
        assert!(ev[0] > lo && *ev.last().unwrap() < hi, "n={n}: [{}, {}]", ev[0], ev.last().unwrap());
    }
}

#[test]
fn toeplitz_min_eigenvalue_quarters() {
    let sym = builtin();
    let mins: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&n| {
            let lat = BlockLattice::square(n, 9).unwrap();
            let t = BlockToeplitz::new(sym.clone(), lat).unwrap().to_csr();
            glt_core::spectra::lattice_spectrum(&t, lat, 20_000).unwrap()[0]
        })
        .collect();
    for w in mins.windows(2) {
        let r = w[0] / w[1];
        assert!((3.0..=5.0).contains(&r), "{mins:?}");
    }
}

#[test]
fn fft_round_trip_on_odd_lengths() {
    let lat = BlockLattice::new(15, 7, 2).unwrap();
    let fft = BlockFft::new(lat);
    let x = random(lat.order(), 8);
    let mut z: Vec<c64> = x.iter().map(|&v| c64::new(v, 0.0)).collect();
    fft.forward(&mut z);
    fft.inverse(&mut z);
    let n = lat.n_hat() as f64;
    assert!(z.iter().zip(&x).all(|(a, b)| (a.re / n - b).abs() < 1e-13 && a.im.abs() < 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fft_matvec_matches_dense(sym in common::arb_symbol(), n1 in 1usize..=8, n2 in 1usize..=8, seed in 0u64..1000) {
        let lat = BlockLattice::new(n1, n2, sym.s()).unwrap();
        let x = random(lat.order(), seed);
        let circ = BlockCirculant::new(sym.clone(), lat).unwrap();
        let dense = circulant_dense(&sym, lat, DENSE_GUARD).unwrap();
        let want = dense_apply(&dense, &x);
        let scale = want.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        prop_assert!(max_diff(&circ.matvec(&x).unwrap(), &want) <= 1e-11 * scale);
    }

    #[test]
    fn stencil_embedding_and_dense_agree(sym in common::arb_symbol(), n1 in 1usize..=8, n2 in 1usize..=8, seed in 0u64..1000) {
        let lat = BlockLattice::new(n1, n2, sym.s()).unwrap();
        let x = random(lat.order(), seed);
        let toep = BlockToeplitz::new(sym.clone(), lat).unwrap();
        let want = dense_apply(&toeplitz_dense(&sym, lat, DENSE_GUARD).unwrap(), &x);
        let scale = want.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        prop_assert!(max_diff(&toep.matvec(&x).unwrap(), &want) <= 1e-12 * scale);
        prop_assert!(max_diff(&toep.matvec_embedded(&x).unwrap(), &want) <= 1e-12 * scale);
    }

    #[test]
    fn circulant_spectrum_identity(sym in common::arb_symbol(), n1 in 1usize..=5, n2 in 1usize..=5) {
        let lat = BlockLattice::new(n1, n2, sym.s()).unwrap();
        let circ = BlockCirculant::new(sym.clone(), lat).unwrap();
        let mut blocks: Vec<f64> = circ
            .spectral_blocks()
            .iter()
            .flat_map(|b| glt_core::linalg::herm_eigenvalues(b.as_ref()).unwrap())
            .collect();
        blocks.sort_by(f64::total_cmp);
        let dense = sym_eigenvalues(circ.to_dense(DENSE_GUARD).unwrap().as_ref()).unwrap();
        prop_assert!(max_diff(&blocks, &dense) <= 1e-10);
    }

    #[test]
    fn toeplitz_dense_is_symmetric(sym in common::arb_symbol(), n in 1usize..=5) {
        let lat = BlockLattice::square(n, sym.s()).unwrap();
        let t = toeplitz_dense(&sym, lat, DENSE_GUARD).unwrap();
        let m = lat.order();
        for i in 0..m {
            for j in 0..m {
                prop_assert!((t[(i, j)] - t[(j, i)]).abs() <= 1e-14);
            }
        }
    }
}
