#![allow(dead_code)]

use kronrad::{CMatrix, C64};
use proptest::prelude::*;

pub const SLACK: f64 = 1e-8;

pub fn entry() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |d| CMatrix::new(rows, cols, d).unwrap())
}

pub fn square(max_n: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max_n).prop_flat_map(|n| matrix(n, n))
}

pub fn nonneg_square(max_n: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0.0..1.0f64, n * n)
            .prop_map(move |d| CMatrix::new(n, n, d.into_iter().map(|x| C64::new(x, 0.0)).collect()).unwrap())
    })
}

pub fn pair_same_size(max_n: usize) -> impl Strategy<Value = (CMatrix, CMatrix)> {
    (1..=max_n).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))
}
