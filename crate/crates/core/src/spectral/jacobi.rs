//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{c, Real};

/// Full-sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Unitary `G` (2x2) with `G* [[a, b], [conj b, d]] G` diagonal, `a, d` real.
///
/// `G = diag(1, e^{-i phi}) R` where `b = |b| e^{i phi}` and `R` is the real
/// symmetric Jacobi rotation for `[[a, |b|], [|b|, d]]`.
#[inline]
pub(crate) fn rotation<T: Real>(a: T, d: T, b: Complex<T>) -> [[Complex<T>; 2]; 2] {
    let mag = b.norm();
    let phase = b.conj() / mag;
    let tau = (d - a) / (mag + mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let cs = T::one() / (T::one() + t * t).sqrt();
    let sn = t * cs;
    [[c(cs), c(sn)], [-phase * sn, phase * cs]]
}

/// Applies `H <- G* H G` on indices `p, q` and `V <- V G`.
#[inline]
fn apply<T: Real>(h: &mut [Complex<T>], v: &mut [Complex<T>], n: usize, p: usize, q: usize, g: &[[Complex<T>; 2]; 2]) {
    for k in 0..n {
        let (hp, hq) = (h[k * n + p], h[k * n + q]);
        h[k * n + p] = hp * g[0][0] + hq * g[1][0];
        h[k * n + q] = hp * g[0][1] + hq * g[1][1];
        let (vp, vq) = (v[k * n + p], v[k * n + q]);
        v[k * n + p] = vp * g[0][0] + vq * g[1][0];
        v[k * n + q] = vp * g[0][1] + vq * g[1][1];
    }
    for k in 0..n {
        let (hp, hq) = (h[p * n + k], h[q * n + k]);
        h[p * n + k] = g[0][0].conj() * hp + g[1][0].conj() * hq;
        h[q * n + k] = g[0][1].conj() * hp + g[1][1].conj() * hq;
    }
    h[p * n + q] = Complex::zero();
    h[q * n + p] = Complex::zero();
    h[p * n + p] = c(h[p * n + p].re);
    h[q * n + q] = c(h[q * n + q].re);
}

fn off_diagonal_sq<T: Real>(h: &[Complex<T>], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            s += h[i * n + j].norm_sqr();
        }
    }
    s + s
}

/// Runs cyclic sweeps in place on a Hermitian `h` (row-major, `n x n`), rotating
/// `v` alongside. Returns the number of sweeps used.
pub(crate) fn sweep_to_convergence<T: Real>(h: &mut [Complex<T>], v: &mut [Complex<T>], n: usize) -> Result<usize> {
    let frob_sq: T = h.iter().map(|z| z.norm_sqr()).sum();
    if frob_sq == T::zero() {
        return Ok(0);
    }
    let target = {
        let e = T::epsilon() * T::from_usize_lossy(n);
        e * e * frob_sq
    };
    for sweep in 0..MAX_SWEEPS {
        if off_diagonal_sq(h, n) <= target {
            return Ok(sweep);
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = h[p * n + q];
                if b.norm_sqr() == T::zero() {
                    continue;
                }
                let g = rotation(h[p * n + p].re, h[q * n + q].re, b);
                apply(h, v, n, p, q, &g);
            }
        }
    }
    if off_diagonal_sq(h, n) <= target {
        Ok(MAX_SWEEPS)
    } else {
        Err(Error::NoConvergence {
            routine: "hermitian Jacobi",
            iterations: MAX_SWEEPS,
        })
    }
}

/// Diagonalises `v0* H v0` starting from the unitary `v0`; returns ascending
/// eigenvalues and the eigenvector matrix (columns).
pub(crate) fn eigh_from<T: Real>(h: &Matrix<T>, v0: Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    let n = h.rows();
    let rotated = &(&v0.adjoint() * h) * &v0;
    let mut work = rotated.into_data();
    // symmetrise against roundoff in the similarity
    for i in 0..n {
        work[i * n + i] = c(work[i * n + i].re);
        for j in i + 1..n {
            let avg = (work[i * n + j] + work[j * n + i].conj()) * T::lit(0.5);
            work[i * n + j] = avg;
            work[j * n + i] = avg.conj();
        }
    }
    let mut v = v0.into_data();
    sweep_to_convergence(&mut work, &mut v, n)?;
    Ok(sorted(n, &work, v))
}

fn sorted<T: Real>(n: usize, h: &[Complex<T>], v: Vec<Complex<T>>) -> (Vec<T>, Matrix<T>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[i * n + i].re.partial_cmp(&h[j * n + j].re).unwrap());
    let vals = order.iter().map(|&i| h[i * n + i].re).collect();
    let vecs = Matrix::from_fn(n, n, |r, k| v[r * n + order[k]]);
    (vals, vecs)
}

/// Eigen-decomposition `H = V diag(mu) V*` of a Hermitian matrix, eigenvalues
/// ascending. Fails when `||H - H*||_inf > tol ||H||_inf`.
pub fn hermitian_eigs<T: Real>(h: &Matrix<T>, tol: T) -> Result<(Vec<T>, Matrix<T>)> {
    let n = h.require_square("hermitian_eigs")?;
    let deviation = (h - &h.adjoint()).norm_inf();
    let allowed = tol * h.norm_inf();
    if deviation > allowed {
        return Err(Error::NotHermitian {
            deviation: deviation.as_f64(),
            allowed: allowed.as_f64(),
        });
    }
    eigh_from(h, Matrix::identity(n))
}

/// Hermitian eigen-decomposition at the default symmetry tolerance.
pub(crate) fn eigh<T: Real>(h: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    hermitian_eigs(h, T::tol(1e-10))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = Matrix<f64>;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> M {
        let a = M::from_fn(n, n, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        a.hermitian_part()
    }

    #[test]
    fn diagonal_and_reflection() {
        let d = M::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(hermitian_eigs(&d, 1e-12).unwrap().0, vec![-1.0, 1.0]);
        let r = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (mu, _) = hermitian_eigs(&r, 1e-12).unwrap();
        assert!((mu[0] + 1.0).abs() < 1e-15 && (mu[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_matches_quadratic_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let h = random_hermitian(&mut rng, 2);
            let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
            // roots of mu^2 - (a + d) mu + (a d - |b|^2)
            let mean = 0.5 * (a + d);
            let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
            let (mu, _) = hermitian_eigs(&h, 1e-12).unwrap();
            assert!((mu[0] - (mean - rad)).abs() < 1e-12);
            assert!((mu[1] - (mean + rad)).abs() < 1e-12);
        }
    }

    #[test]
    fn residual_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [1, 3, 6, 12] {
            let h = random_hermitian(&mut rng, n);
            let (mu, v) = hermitian_eigs(&h, 1e-12).unwrap();
            let lam = M::diag(&mu.iter().map(|&x| cx(x, 0.0)).collect::<Vec<_>>());
            let resid = &(&h * &v) - &(&v * &lam);
            assert!(resid.norm_inf() <= 1e-10 * h.norm_inf().max(1.0));
            let gram = &v.adjoint() * &v;
            assert!(gram.max_abs_diff(&M::identity(n)) < 1e-10);
            assert!(mu.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn warm_start_matches_cold() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_hermitian(&mut rng, 5);
        let (cold, v) = hermitian_eigs(&h, 1e-12).unwrap();
        let h2 = &h + &M::identity(5).scale_real(1e-3);
        let (warm, _) = eigh_from(&h2, v).unwrap();
        for (a, b) in cold.iter().zip(&warm) {
            assert!((a + 1e-3 - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = M::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigs(&a, 1e-12), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn single_precision() {
        let h = Matrix::<f32>::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let (mu, _) = hermitian_eigs(&h, 1e-5).unwrap();
        assert!((mu[0] - 1.0).abs() < 1e-6 && (mu[1] - 3.0).abs() < 1e-6);
    }
}
