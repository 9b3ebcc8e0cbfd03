//! One-sided (Hestenes) Jacobi SVD. Used where small singular values must be
//! resolved to full precision: numerical rank, null spaces, least-residual
//! directions.

use num_complex::Complex;

use super::jacobi::rotation;
use crate::error::{Error, Result};
use crate::matrix::{vector, Matrix};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 60;

/// Thin decomposition data: descending singular values `s` (length `cols`) and
/// the unitary `v` (`cols x cols`) whose columns are the matching right
/// singular vectors.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub s: Vec<T>,
    pub v: Matrix<T>,
}

/// Computes singular values and right singular vectors of `a`.
pub fn svd<T: Real>(a: &Matrix<T>) -> Result<Svd<T>> {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<Complex<T>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex<T>>> = (0..n).map(|j| vector::basis(n, j)).collect();
    let eps = T::epsilon() * T::from_usize_lossy(m.max(n));
    // columns below this squared norm are numerically zero and left alone
    let negligible = {
        let f = T::epsilon() * a.frobenius();
        f * f
    };
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: T = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = w[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = vector::dot(&w[p], &w[q]);
                if alpha <= negligible || beta <= negligible || gamma.norm() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let g = rotation(alpha, beta, gamma);
                for cols in [&mut w, &mut v] {
                    let (left, right) = cols.split_at_mut(q);
                    let (cp, cq) = (&mut left[p], &mut right[0]);
                    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                        let (xp, xq) = (*x, *y);
                        *x = xp * g[0][0] + xq * g[1][0];
                        *y = xp * g[0][1] + xq * g[1][1];
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "one-sided Jacobi SVD",
            iterations: MAX_SWEEPS,
        });
    }
    let norms: Vec<T> = w.iter().map(|col| vector::norm2(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap().then(i.cmp(&j)));
    Ok(Svd {
        s: order.iter().map(|&k| norms[k]).collect(),
        v: Matrix::from_fn(n, n, |r, k| v[order[k]][r]),
    })
}

/// Number of singular values above `tol`.
pub fn numerical_rank<T: Real>(a: &Matrix<T>, tol: T) -> Result<usize> {
    Ok(svd(a)?.s.iter().filter(|&&s| s > tol).count())
}

/// Orthonormal basis (as columns) of the numerical null space
/// `{x : singular value of x direction <= tol}`; `None` when it is trivial.
pub fn null_space<T: Real>(a: &Matrix<T>, tol: T) -> Result<Option<Matrix<T>>> {
    let d = svd(a)?;
    let n = a.cols();
    let rank = d.s.iter().filter(|&&s| s > tol).count();
    if rank == n {
        return Ok(None);
    }
    let idx: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (rank..n).collect();
    Ok(Some(d.v.select(&idx, &cols)))
}

/// Smallest singular value together with a unit vector attaining it.
pub fn min_singular<T: Real>(a: &Matrix<T>) -> Result<(T, Vec<Complex<T>>)> {
    let d = svd(a)?;
    let n = a.cols();
    Ok((d.s[n - 1], d.v.column(n - 1)))
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

    fn random(rng: &mut ChaCha8Rng, m: usize, n: usize) -> M {
        M::from_fn(m, n, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn diagonal_values() {
        let a = M::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -3.0]]).unwrap();
        let d = svd(&a).unwrap();
        assert!((d.s[0] - 3.0).abs() < 1e-15 && (d.s[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reconstructs_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, n) in [(4, 4), (6, 3), (3, 6)] {
            let a = random(&mut rng, m, n);
            let d = svd(&a).unwrap();
            // A* A = V diag(s^2) V*
            let s2: Vec<_> = d.s.iter().map(|s| cx(s * s, 0.0)).collect();
            let rebuilt = &(&d.v * &M::diag(&s2)) * &d.v.adjoint();
            assert!(rebuilt.max_abs_diff(&(&a.adjoint() * &a)) < 1e-12);
            assert!((&d.v.adjoint() * &d.v).max_abs_diff(&M::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn rank_and_null_space_of_rank_deficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random(&mut rng, 5, 2);
        let y = random(&mut rng, 2, 5);
        let a = &x * &y;
        assert_eq!(numerical_rank(&a, 1e-10).unwrap(), 2);
        let ns = null_space(&a, 1e-10).unwrap().unwrap();
        assert_eq!(ns.cols(), 3);
        assert!((&a * &ns).max_abs() < 1e-12);
        let (smin, vmin) = min_singular(&a).unwrap();
        assert!(smin < 1e-12);
        assert!(vector::norm2(&a.mul_vec(&vmin)) < 1e-12);
    }

    #[test]
    fn full_rank_has_no_null_space() {
        assert!(null_space(&M::identity(3), 1e-10).unwrap().is_none());
    }
}
