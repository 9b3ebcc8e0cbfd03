//! Seeded random test-matrix generators.
//!
//! Every generator samples in `f64` and converts, so a given seed yields the
//! same matrices (up to rounding) in every precision.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{vector, Matrix};
use crate::scalar::Real;

/// Deterministic generator for `(seed, stream)`; distinct streams are
/// independent, so trial `k` of a suite can be replayed on its own.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn lift<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Entries with independent real and imaginary parts uniform on `[-1, 1)`.
pub fn random_complex<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| lift(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Real entries uniform on `[lo, hi)`.
pub fn random_real<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, lo: f64, hi: f64) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| lift(rng.random_range(lo..hi), 0.0))
}

/// Complex vector with uniform entries as in [`random_complex`].
pub fn random_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|_| lift(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// Haar-like unitary: Gram-Schmidt applied to a complex Gaussian matrix.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let cols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    lift(re, im)
                })
                .collect()
        })
        .collect();
    let q = complete_orthonormal(&cols, n);
    Matrix::from_fn(n, n, |i, j| q[j][i])
}

/// Orthonormalises `cols` (vectors in `C^n`) by modified Gram-Schmidt with one
/// reorthogonalisation pass, dropping numerically dependent vectors, then
/// completes with standard basis vectors to an orthonormal basis of `C^n`.
pub fn complete_orthonormal<T: Real>(cols: &[Vec<Complex<T>>], n: usize) -> Vec<Vec<Complex<T>>> {
    let mut basis: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    let cutoff = T::tol(1e-10);
    let candidates = cols.iter().cloned().chain((0..n).map(|k| vector::basis(n, k)));
    for mut v in candidates {
        if basis.len() == n {
            break;
        }
        let before = vector::norm2(&v);
        if before == T::zero() {
            continue;
        }
        for _ in 0..2 {
            for q in &basis {
                let proj = vector::dot(q, &v);
                for (x, qi) in v.iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let after = vector::norm2(&v);
        if after > cutoff * before {
            basis.push(v.iter().map(|x| x / after).collect());
        }
    }
    basis
}

/// Hermitian positive semidefinite `n x n` matrix of the given rank.
pub fn random_psd<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> Matrix<T> {
    if rank == 0 {
        return Matrix::zeros(n, n);
    }
    let x = random_complex::<T, _>(rng, n, rank);
    (&x * &x.adjoint()).hermitian_part()
}

/// `k` times a random convex combination of `terms` permutation matrices.
pub fn random_doubly_stochastic<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, k: f64, terms: usize) -> Matrix<T> {
    let mut acc = vec![0.0f64; n * n];
    let mut weights: Vec<f64> = (0..terms.max(1)).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    for w in weights {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        for (i, &j) in perm.iter().enumerate() {
            acc[i * n + j] += w;
        }
    }
    Matrix::from_fn(n, n, |i, j| lift(k * acc[i * n + j], 0.0))
}
