//! Eigenvalues (no vectors) of Hermitian matrices: Householder reduction to a
//! real symmetric tridiagonal matrix, then implicit QL with Wilkinson shifts.
//! Roughly an order of magnitude cheaper than Jacobi when only the spectrum is
//! needed, which is the situation in the numerical radius sweep.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;

const MAX_QL_ITERATIONS: usize = 60;

/// Ascending eigenvalues of a Hermitian `h` (not checked).
pub(crate) fn eigvalsh<T: Real>(h: &Matrix<T>) -> Result<Vec<T>> {
    let n = h.rows();
    let mut a = h.data().to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    let mut u = vec![Complex::<T>::zero(); n];
    let mut p = vec![Complex::<T>::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let xnorm = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<T>().sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        for (t, i) in (k + 1..n).enumerate() {
            u[t] = a[i * n + k];
        }
        u[0] += phase * xnorm;
        let unorm = u[..len].iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        for z in &mut u[..len] {
            *z /= unorm;
        }
        // trailing block B <- P B P with P = I - 2 u u*, via p = 2 B u,
        // kappa = u* p, w = p - kappa u, B <- B - u w* - w u*
        let two = T::lit(2.0);
        for r in 0..len {
            let row = (k + 1 + r) * n + k + 1;
            let mut s = Complex::zero();
            for t in 0..len {
                s += a[row + t] * u[t];
            }
            p[r] = s * two;
        }
        let kappa: Complex<T> = (0..len).map(|t| u[t].conj() * p[t]).sum();
        for t in 0..len {
            p[t] -= u[t] * kappa;
        }
        for r in 0..len {
            let row = (k + 1 + r) * n + k + 1;
            for t in 0..len {
                a[row + t] -= u[r] * p[t].conj() + p[r] * u[t].conj();
            }
        }
        // column k becomes (-phase |x|) e_1; only its modulus matters below
        a[(k + 1) * n + k] = -phase * xnorm;
        for i in k + 2..n {
            a[i * n + k] = Complex::zero();
        }
    }
    for i in 0..n {
        d[i] = a[i * n + i].re;
        if i + 1 < n {
            // a diagonal unitary similarity makes the off-diagonal real and nonnegative
            e[i] = a[(i + 1) * n + i].norm();
        }
    }
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Implicit QL on the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `d[i]` and `d[i + 1]`). Leaves the
/// eigenvalues in `d`, unsorted.
fn tridiagonal_ql<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    let eps = T::epsilon();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence {
                    routine: "tridiagonal QL",
                    iterations,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut restarted = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    restarted = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if restarted {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::hermitian_eigs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = Matrix<f64>;

    #[test]
    fn matches_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [1, 2, 3, 5, 10, 24] {
            for _ in 0..5 {
                let a = M::from_fn(n, n, |_, _| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
                let h = a.hermitian_part();
                let fast = eigvalsh(&h).unwrap();
                let (slow, _) = hermitian_eigs(&h, 1e-12).unwrap();
                for (x, y) in fast.iter().zip(&slow) {
                    assert!((x - y).abs() < 1e-12, "n={n}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn repeated_and_zero_spectra() {
        assert_eq!(eigvalsh(&M::zeros(4, 4)).unwrap(), vec![0.0; 4]);
        let ones = eigvalsh(&M::ones(4, 4)).unwrap();
        assert!(ones[..3].iter().all(|x| x.abs() < 1e-14));
        assert!((ones[3] - 4.0).abs() < 1e-14);
    }
}
