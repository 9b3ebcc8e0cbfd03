//! General complex eigenvalues: Householder reduction to upper Hessenberg form
//! followed by Wilkinson-shifted QR sweeps with deflation.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{c, Real};

/// Largest dimension accepted by [`eigenvalues`].
pub const MAX_DIM: usize = 256;

/// Reduces `a` (square) to upper Hessenberg form by unitary similarity.
pub(crate) fn hessenberg<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let phase = if x[0].norm() == T::zero() {
            c(T::one())
        } else {
            x[0] / x[0].norm()
        };
        // v = x + phase |x| e_1 avoids cancellation
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }
        let two = T::lit(2.0);
        // H <- (I - 2 v v*) H on rows k+1..n
        for j in 0..n {
            let s: Complex<T> = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= *vi * s * two;
            }
        }
        // H <- H (I - 2 v v*) on columns k+1..n
        for i in 0..n {
            let s: Complex<T> = v.iter().enumerate().map(|(t, vi)| h[(i, k + 1 + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= s * vi.conj() * two;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
    h
}

/// Eigenvalues of `[[a, b], [cc, d]]` as `(near d, far from d)`.
pub(crate) fn eig2x2<T: Real>(a: Complex<T>, b: Complex<T>, cc: Complex<T>, d: Complex<T>) -> (Complex<T>, Complex<T>) {
    let p = (a - d) * T::lit(0.5);
    let bc = b * cc;
    let disc = (p * p + bc).sqrt();
    let (plus, minus) = (p + disc, p - disc);
    let delta = if plus.norm() >= minus.norm() { plus } else { minus };
    if delta.norm() == T::zero() {
        (d, d)
    } else {
        (d - bc / delta, d + delta)
    }
}

/// Complex Givens `(cs, sn)` with `[[cs, sn], [-conj sn, cs]] [x; y] = [r; 0]`.
#[inline]
fn givens<T: Real>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>) {
    let ax = x.norm();
    let nrm = ax.hypot(y.norm());
    if nrm == T::zero() {
        (T::one(), Complex::zero())
    } else if ax == T::zero() {
        (T::zero(), c(T::one()))
    } else {
        (ax / nrm, (x / ax) * y.conj() / nrm)
    }
}

/// One explicitly shifted QR step on the active window `lo..=hi`.
fn qr_step<T: Real>(h: &mut Matrix<T>, lo: usize, hi: usize, mu: Complex<T>) {
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (cs, sn) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = x * cs + sn * y;
            h[(k + 1, j)] = -sn.conj() * x + y * cs;
        }
        rots.push((cs, sn));
    }
    for (off, &(cs, sn)) in rots.iter().enumerate() {
        let k = lo + off;
        for i in lo..=(k + 2).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * cs + y * sn.conj();
            h[(i, k + 1)] = -x * sn + y * cs;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Sorts by descending modulus, then descending real part, then descending
/// imaginary part.
pub fn sort_eigenvalues<T: Real>(vals: &mut [Complex<T>]) {
    vals.sort_by(|x, y| {
        y.norm()
            .partial_cmp(&x.norm())
            .unwrap()
            .then(y.re.partial_cmp(&x.re).unwrap())
            .then(y.im.partial_cmp(&x.im).unwrap())
    });
}

/// All `n` eigenvalues of a square matrix (`n <= 256`), in the deterministic
/// order of [`sort_eigenvalues`]. Gives up after `30 n` QR steps.
pub fn eigenvalues<T: Real>(a: &Matrix<T>) -> Result<Vec<Complex<T>>> {
    let n = a.require_square("eigenvalues")?;
    if n > MAX_DIM {
        return Err(Error::TooLarge {
            op: "eigenvalues",
            n,
            limit: MAX_DIM,
        });
    }
    let mut h = hessenberg(a);
    let scale = h.frobenius();
    let eps = T::epsilon();
    let mut vals = vec![Complex::zero(); n];
    let cap = 30 * n;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n as isize - 1;
    while hi >= 0 {
        let top = hi as usize;
        if top == 0 {
            vals[0] = h[(0, 0)];
            break;
        }
        // locate the start of the unreduced block ending at `top`
        let mut lo = top;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if local == T::zero() {
                local = scale;
            }
            // the normwise test lets clusters of tiny, defective eigenvalues deflate
            if sub <= eps * local || sub <= eps * scale {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == top {
            vals[top] = h[(top, top)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if lo + 1 == top {
            let (near, far) = eig2x2(h[(lo, lo)], h[(lo, top)], h[(top, lo)], h[(top, top)]);
            vals[top] = near;
            vals[lo] = far;
            hi -= 2;
            since_deflation = 0;
            continue;
        }
        if total >= cap {
            return Err(Error::NoConvergence {
                routine: "shifted QR eigenvalues",
                iterations: total,
            });
        }
        let mu = if since_deflation > 0 && since_deflation % 10 == 0 {
            // exceptional shift to break cycles
            h[(top, top)] + c(T::lit(0.75) * h[(top, top - 1)].norm())
        } else {
            eig2x2(
                h[(top - 1, top - 1)],
                h[(top - 1, top)],
                h[(top, top - 1)],
                h[(top, top)],
            )
            .0
        };
        qr_step(&mut h, lo, top, mu);
        total += 1;
        since_deflation += 1;
    }
    sort_eigenvalues(&mut vals);
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structured::{circulant, companion};
    use crate::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = Matrix<f64>;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn hessenberg_preserves_trace_and_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = M::from_fn(6, 6, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let h = hessenberg(&a);
        assert!((h.trace() - a.trace()).norm() < 1e-12);
        assert!((h.frobenius() - a.frobenius()).abs() < 1e-12);
        for i in 0..6usize {
            for j in 0..i.saturating_sub(1) {
                assert_eq!(h[(i, j)], cx(0.0, 0.0));
            }
        }
    }

    #[test]
    fn companion_of_z2_plus_1() {
        let p = Poly::new(vec![cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
        let e = eigenvalues(&companion(&p)).unwrap();
        // ties in modulus and real part: +i before -i
        assert!((e[0] - cx(0.0, 1.0)).norm() < 1e-14);
        assert!((e[1] - cx(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn circulant_minus_a_b_spectrum() {
        // Circ(-1, 2, 2, 2): Fourier eigenvalues -a + (n-1) b = 5 and -a - b = -3 (x3)
        let a = circulant(&[cx(-1.0, 0.0), cx(2.0, 0.0), cx(2.0, 0.0), cx(2.0, 0.0)]).unwrap();
        let e = eigenvalues(&a).unwrap();
        assert!((e[0] - cx(5.0, 0.0)).norm() < 1e-12);
        for z in &e[1..] {
            assert!((z - cx(-3.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn circulant_fourier_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..9 {
            let first: Vec<_> = (0..n).map(|_| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let mut expected: Vec<_> = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| {
                            let ang = 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
                            first[j] * cx(ang.cos(), ang.sin())
                        })
                        .sum::<Complex<f64>>()
                })
                .collect();
            sort_eigenvalues(&mut expected);
            let got = eigenvalues(&circulant(&first).unwrap()).unwrap();
            // compare as multisets
            for z in &expected {
                let best = got.iter().map(|g| (g - z).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn nilpotent_and_trace() {
        let j = M::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(eigenvalues(&j).unwrap(), vec![cx(0.0, 0.0); 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in [3, 7, 15, 30] {
            let a = M::from_fn(n, n, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let e = eigenvalues(&a).unwrap();
            let s: Complex<f64> = e.iter().sum();
            assert!((s - a.trace()).norm() <= 1e-8 * a.frobenius().max(1.0) * n as f64);
        }
    }

    #[test]
    fn real_matrix_with_complex_pairs() {
        // rotation by 90 degrees scaled, plus a real eigenvalue
        let a = M::from_real_rows(&[vec![0.0, -2.0, 0.0], vec![2.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let e = eigenvalues(&a).unwrap();
        assert!((e[0] - cx(0.0, 2.0)).norm() < 1e-13);
        assert!((e[1] - cx(0.0, -2.0)).norm() < 1e-13);
        assert!((e[2] - cx(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn defective_kronecker_square_converges() {
        // U (r e^{i phi} ⊕ r J_2) U*, squared in the Kronecker sense: a zero
        // eigenvalue of multiplicity 8 carrying Jordan blocks
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let u: M = crate::generators::random_unitary(&mut rng, 3);
        let core = M::diag(&[cx(-1.2, 1.0)]).direct_sum(&M::from_real_rows(&[vec![0.0, 1.6], vec![0.0, 0.0]]).unwrap());
        let a = &(&u * &core) * &u.adjoint();
        let e = eigenvalues(&crate::structured::kron(&a, &a).unwrap()).unwrap();
        assert!((e[0] - cx(-1.2, 1.0) * cx(-1.2, 1.0)).norm() < 1e-12);
        assert!(e[1..].iter().all(|z| z.norm() < 1e-6));
    }

    #[test]
    fn rejects_oversized() {
        let a = M::identity(257);
        assert!(matches!(eigenvalues(&a), Err(Error::TooLarge { .. })));
    }
}
