#![allow(dead_code)]

use glt_core::symbol::MatrixSymbol;
use proptest::prelude::*;

/// Random Hermitian-symmetric symbol with `s <= 4` and degree `<= 2`.
pub fn arb_symbol() -> impl Strategy<Value = MatrixSymbol> {
    (1usize..=4).prop_flat_map(|s| {
        let offsets: Vec<[i32; 2]> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| [a, b]))
            .filter(|j| j[0] > 0 || (j[0] == 0 && j[1] >= 0))
            .collect();
        let picks = proptest::sample::subsequence(offsets.clone(), 1..=4);
        (Just(s), picks, proptest::collection::vec(-1.0f64..1.0, 13 * s * s))
    })
    .prop_map(|(s, picks, vals)| {
        let mut half: Vec<([i32; 2], Vec<f64>)> = picks
            .into_iter()
            .enumerate()
            .map(|(i, j)| (j, vals[i * s * s..(i + 1) * s * s].to_vec()))
            .collect();
        if !half.iter().any(|(j, _)| *j == [0, 0]) {
            half.push(([0, 0], vals[12 * s * s..].to_vec()));
        }
        MatrixSymbol::hermitian_completion(s, half).expect("completion is Hermitian")
    })
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn dense_apply(m: &faer::Mat<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum()).collect()
}
